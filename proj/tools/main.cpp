#include "commands.hpp"

#include "measuregraph/errors.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Random graphs from product random measures and edge transforms"};
    app.require_subcommand(1);
    int status = 0;
    measuregraph::cli::register_commands(app, status);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const measuregraph::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << '\n';
        return 2;
    } catch (const measuregraph::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const measuregraph::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return status;
}
