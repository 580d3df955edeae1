#ifndef MEASUREGRAPH_TOOLS_COMMANDS_HPP
#define MEASUREGRAPH_TOOLS_COMMANDS_HPP

namespace CLI {
class App;
}

namespace measuregraph::cli {

// Exit status for a run that completed but failed its own check (verify z-scores).
constexpr int kCheckFailed = 5;

// Registers every subcommand on app. Callbacks throw the library error types and may set status.
void register_commands(CLI::App& app, int& status);

} // namespace measuregraph::cli

#endif
