#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "boundq/cli/run.hpp"

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw boundq::InvalidArgument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace boundq::cli;
    CLI::App app{"Homotopy relations, HH^1 and maximal diagonalizable subalgebras of bound quiver algebras"};
    app.footer(
        "Products are written right to left: c*a is the path a followed by c.\n"
        "Budgets: document 'budget key = n' lines, then environment variables\n"
        "BOUNDQ_NODES, BOUNDQ_WORD_LENGTH, BOUNDQ_MAX_VERTICES, BOUNDQ_MAX_CANDIDATES,\n"
        "BOUNDQ_GRID, BOUNDQ_MAX_STATES, then the flags below.\n"
        "Exit codes: 0 ok, 1 check failed, 2 input error, 3 unknowns within budget.");
    Options opt;
    std::string file, ideal;
    bool json = false;
    std::map<std::string, long long> values;
    app.add_option("command", opt.command, "validate | pi1 | homk | hh1 | theta | gamma | maxdiag | verify")->required();
    app.add_option("file", file, "input document ('-' for stdin)")->required();
    app.add_option("--ideal", ideal, "ideal name");
    app.add_flag("--json", json, "canonical JSON output");
    for (const auto& k : budget_keys()) {
        std::string flag = "--" + k;
        std::replace(flag.begin(), flag.end(), '_', '-');
        app.add_option_function<long long>(flag, [&values, k](long long v) { values[k] = v; }, "budget: " + k)->check(CLI::NonNegativeNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::input_error);
    }
    if (!ideal.empty()) opt.ideal = ideal;
    opt.budget_flags = values;
    try {
        std::string text;
        if (file == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            text = read_file(file);
        }
        InputDocument doc = parse_input(text);
        Report r = run(doc, opt, resolve_budgets(doc, opt.budget_flags));
        std::cout << emit(r, json);
        return static_cast<int>(r.exit_code());
    } catch (const boundq::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::input_error);
    } catch (const boundq::Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::check_failed);
    }
}
