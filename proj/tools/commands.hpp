#ifndef AGGTS_COMMANDS_HPP
#define AGGTS_COMMANDS_HPP

#include <string>

namespace aggts::cli {

struct AggregateArgs {
    std::string input;
    std::string output;
    std::string kernel = "ma";
    int window = 7;
    std::string mode = "future";
    std::string date_column = "date";
    std::string value_column = "value";
};

void cmd_aggregate(const AggregateArgs& args);
void cmd_simulate(const std::string& config_path, const std::string& output_dir);
void cmd_fit(const std::string& config_path, const std::string& output_path);
void cmd_cv(const std::string& config_path, const std::string& output_dir);
void cmd_surface(const std::string& config_path, const std::string& output_path);
void cmd_compare(const std::string& config_path, const std::string& output_dir);
void cmd_sweep(const std::string& config_path, const std::string& output_dir);

} // namespace aggts::cli

#endif
