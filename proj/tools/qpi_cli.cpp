#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qpi/system_io.hpp"

using namespace qpi;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// a --pi flag becomes a leading pi line; an explicit pi line in the file wins
std::string with_pi(const std::string& text, const std::string& pi) {
    if (pi.empty()) return text;
    return "pi " + pi + "\n" + text;
}

std::string root_line(const Tower& tw, const RootAdjunction& adj) {
    return "ROOT " + tw.alphabet().name_of(adj.letter) + " = (" +
           print_word(tw.alphabet(), adj.base) + ")^(1/" +
           std::to_string(adj.degree) + ")";
}

int run_solve(const std::string& file, const std::string& pi,
              const Budgets& budgets, const std::string& emit_path) {
    EquationSystem sys = parse_system(with_pi(read_input(file), pi));
    if (!emit_path.empty()) {
        TriangularSystem tri = triangularize(eliminate_coefficients(sys));
        std::ofstream out(emit_path);
        if (!out) throw Error("cannot write '" + emit_path + "'");
        out << serialize(tri);
    }
    Decision d = decide_system(sys, budgets);
    switch (d.verdict) {
        case Verdict::Solvable: {
            std::cout << "RESULT solvable\n";
            for (std::size_t v = 0; v < sys.variables.size(); ++v)
                std::cout << "WITNESS " << sys.variables[v] << " = "
                          << print_word(d.tower->alphabet(), d.witness[v])
                          << "\n";
            for (const RootAdjunction& adj : d.tower->adjunctions())
                std::cout << root_line(*d.tower, adj) << "\n";
            return 0;
        }
        case Verdict::Unsolvable:
            std::cout << "RESULT unsolvable\n";
            if (!d.detail.empty()) std::cout << "DETAIL " << d.detail << "\n";
            return 1;
        case Verdict::Unknown:
            std::cout << "RESULT unknown\n";
            if (!d.detail.empty()) std::cout << "DETAIL " << d.detail << "\n";
            return 2;
    }
    return 3;
}

int run_normalize(const std::string& file, const std::string& pi,
                  const std::string& word) {
    EquationSystem sys = parse_system(with_pi(read_input(file), pi));
    const Tower& tw = *sys.tower;
    Word w = normal_form(tw, parse_tower_word(tw, word));
    std::cout << print_word(tw.alphabet(), w) << "\n";
    return 0;
}

int run_pow(const std::string& file, const std::string& pi,
            const std::string& word, const std::string& expo) {
    EquationSystem sys = parse_system(with_pi(read_input(file), pi));
    QElement g = q_element(sys.tower, parse_tower_word(*sys.tower, word));
    QElement r = qexp(g, parse_exponent(expo));
    std::cout << print_word(r.tower->alphabet(), r.word) << "\n";
    for (int j = sys.tower->rank() + 1; j <= r.tower->rank(); ++j)
        std::cout << root_line(*r.tower, r.tower->adjunction(j)) << "\n";
    return 0;
}

int run_reduce(const std::string& file, const std::string& pi,
               const std::string& emit_path) {
    EquationSystem sys = parse_system(with_pi(read_input(file), pi));
    EquationSystem elim = eliminate_coefficients(sys);
    TriangularSystem tri = triangularize(elim);
    std::ostringstream os;
    os << "eliminated:\n" << serialize(elim);
    os << "triangular:\n" << serialize(tri);
    std::cout << os.str();
    if (!emit_path.empty()) {
        std::ofstream out(emit_path);
        if (!out) throw Error("cannot write '" + emit_path + "'");
        out << serialize(tri);
    }
    return 0;
}

int run_vn(const std::string& pi, const std::string& gens, int n) {
    Alphabet ab;
    std::string name;
    std::istringstream in(gens);
    while (std::getline(in, name, ','))
        if (!name.empty()) ab.add(name);
    std::vector<Int> primes;
    std::istringstream pin(pi);
    while (std::getline(pin, name, ','))
        if (!name.empty()) primes.push_back(Int(name));
    PiSet ps(primes);
    Tower tw(ab, ps);
    std::vector<Word> vn = select_vn(tw, ps, n);
    for (std::size_t i = 0; i < vn.size(); ++i)
        std::cout << (i ? " " : "") << print_word(ab, vn[i]);
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic and equation solving in free Q_pi-groups"};
    app.require_subcommand(1);

    std::string pi, file = "-", word, expo, emit_path, gens = "a,b";
    Budgets budgets;
    int n = 2;

    auto add_pi = [&](CLI::App* cmd) {
        cmd->add_option("--pi", pi, "comma-separated primes, e.g. 2,3");
    };

    CLI::App* solve = app.add_subcommand("solve", "decide an equation system");
    solve->add_option("file", file, "system file, - for stdin");
    add_pi(solve);
    solve->add_option("--max-len", budgets.max_len, "word length budget");
    solve->add_option("--max-rank", budgets.max_rank, "extra tower roots");
    solve->add_option("--max-depth", budgets.max_depth, "recursion depth cap");
    solve->add_option("--lin-cap", budgets.lin_cap, "linear solver cap");
    solve->add_option("--emit-reduction", emit_path,
                      "write the triangular reduction to a file");

    CLI::App* norm = app.add_subcommand("normalize", "canonical spelling");
    norm->add_option("file", file, "system file, - for stdin");
    norm->add_option("word", word, "word to normalize")->required();
    add_pi(norm);

    CLI::App* pw = app.add_subcommand("pow", "rational exponentiation");
    pw->add_option("file", file, "system file, - for stdin");
    pw->add_option("word", word, "base word")->required();
    pw->add_option("exponent", expo, "integer or (p/q)")->required();
    add_pi(pw);

    CLI::App* red = app.add_subcommand("reduce", "emit the reduced systems");
    red->add_option("file", file, "system file, - for stdin");
    add_pi(red);
    red->add_option("--emit-reduction", emit_path,
                    "write the triangular reduction to a file");

    CLI::App* vn = app.add_subcommand("vn", "test-element selection");
    add_pi(vn);
    vn->add_option("--n", n, "selection index (length cap m_n = n)");
    vn->add_option("--generators", gens, "comma-separated generators");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(file, pi, budgets, emit_path);
        if (norm->parsed()) return run_normalize(file, pi, word);
        if (pw->parsed()) return run_pow(file, pi, word, expo);
        if (red->parsed()) return run_reduce(file, pi, emit_path);
        if (vn->parsed()) return run_vn(pi, gens, n);
    } catch (const ParseError& e) {
        std::cerr << "ERROR " << e.what() << " (line " << e.line << ", column "
                  << e.col << ")\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "ERROR " << e.what() << "\n";
        return 3;
    }
    return 4;
}
