#pragma once

// Command-line front end: invert, verify, gen, bench.
//
// Exit codes:
//   0  success
//   1  parse error, unreadable file, invalid flags or field clash
//   2  dimension mismatch
//   3  weight not symmetric positive definite
//   4  degenerate recursion (DegenerateDelta / DegenerateWeight / SingularMatrix)
//   5  check failed (verify residuals, equivalence gate)
//
// Payload goes to the output stream; diagnostics and report notes go to the
// error stream.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <wmpinv/wmpinv.hpp>

namespace wmp::cli {

enum Exit : int {
    kOk = 0,
    kInput = 1,
    kDimension = 2,
    kNotSpd = 3,
    kDegenerate = 4,
    kCheckFailed = 5,
};

inline int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DimensionMismatch:
    case ErrorKind::IndexOutOfRange: return kDimension;
    case ErrorKind::WeightNotSPD: return kNotSpd;
    case ErrorKind::DegenerateDelta:
    case ErrorKind::DegenerateWeight:
    case ErrorKind::SingularMatrix: return kDegenerate;
    case ErrorKind::ParseError:
    case ErrorKind::DivisionByZero:
    case ErrorKind::UnsupportedField: return kInput;
    }
    return kInput;
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline AnyMatrix load_matrix(const std::string& path)
{
    try {
        return parse_matrix(read_file(path));
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

inline void write_payload(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

template <Field T>
Matrix<T> weight_or_identity(const std::string& path, std::size_t n)
{
    if (path.empty()) return Matrix<T>::identity(n);
    return convert_to<T>(load_matrix(path));
}

/// Field both matrices can live in: rational embeds everywhere; float and
/// ratfun do not mix.
inline FieldTag common_field(FieldTag a, FieldTag b)
{
    if (a == b) return a;
    if (a == FieldTag::Rational) return b;
    if (b == FieldTag::Rational) return a;
    throw Error(ErrorKind::UnsupportedField, "cannot combine float and ratfun matrices");
}

template <class F>
decltype(auto) dispatch_field(FieldTag tag, F&& f)
{
    switch (tag) {
    case FieldTag::Rational: return f(Rational{});
    case FieldTag::Float: return f(double{});
    case FieldTag::RatFun: break;
    }
    return f(RatFun{});
}

/// One-line description of an equivalence report.
template <Field T>
std::string equivalence_line(const EquivalenceReport& rep)
{
    if constexpr (is_exact_v<T>) {
        return rep.exact_equal ? "equivalent: exact" : "equivalent: MISMATCH";
    } else {
        std::ostringstream s;
        s << "equivalent: " << (rep.equivalent(false) ? "within tolerance" : "MISMATCH")
          << " (max_gap=" << std::setprecision(3) << rep.max_entry_gap << ")";
        return s.str();
    }
}

// ---------------------------------------------------------------------------

struct InvertOptions {
    std::string matrix;
    std::string left;
    std::string right;
    std::string algorithm = "both";
    double tol = 1e-9;
    bool no_validate = false;
    std::string output;
};

inline int cmd_invert(const InvertOptions& o, std::ostream& out, std::ostream& err)
{
    const AnyMatrix any = load_matrix(o.matrix);
    return dispatch_field(field_of(any), [&](auto tag) -> int {
        using T = decltype(tag);
        const Matrix<T> a = convert_to<T>(any);
        const Matrix<T> m = weight_or_identity<T>(o.left, a.rows());
        const Matrix<T> n = weight_or_identity<T>(o.right, a.cols());
        RecursionConfig cfg;
        cfg.zero_tol_rel = o.tol;
        cfg.validate_weights = !o.no_validate;
        if (o.algorithm == "wang") {
            write_payload(serialize_matrix(wmp_wang(a, m, n, cfg)), o.output, out);
            return kOk;
        }
        if (o.algorithm == "udwadia") {
            write_payload(serialize_matrix(lm_udwadia(a, m, n, cfg)), o.output, out);
            return kOk;
        }
        const SweepResult<T> w = wang_sweep(a, m, n, cfg);
        const SweepResult<T> u = udwadia_sweep(a, m, n, cfg);
        const EquivalenceReport rep = compare_inverses(w, u);
        write_payload(serialize_matrix(w.inverse), o.output, out);
        err << equivalence_line<T>(rep) << "\n";
        return rep.equivalent(is_exact_v<T>) ? kOk : kCheckFailed;
    });
}

struct VerifyOptions {
    std::string matrix;
    std::string inverse;
    std::string left;
    std::string right;
    double tol = 1e-8;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& /*err*/)
{
    const AnyMatrix any_a = load_matrix(o.matrix);
    const AnyMatrix any_x = load_matrix(o.inverse);
    const FieldTag tag = common_field(field_of(any_a), field_of(any_x));
    return dispatch_field(tag, [&](auto t) -> int {
        using T = decltype(t);
        const Matrix<T> a = convert_to<T>(any_a);
        const Matrix<T> x = convert_to<T>(any_x);
        const Matrix<T> m = weight_or_identity<T>(o.left, a.rows());
        const Matrix<T> n = weight_or_identity<T>(o.right, a.cols());
        const PenroseResiduals r = penrose_residuals(a, x, m, n);
        double threshold = 0.0;
        if constexpr (!is_exact_v<T>) threshold = o.tol * std::max(1.0, fro_norm(a));
        bool all = true;
        for (std::size_t i = 0; i < 4; ++i) {
            const bool pass = r.passes(i, threshold);
            all = all && pass;
            out << PenroseResiduals::labels[i] << ": ";
            if (!r.exact) out << "residual=" << std::setprecision(3) << std::scientific << r.norm[i] << " ";
            out << (pass ? "PASS" : "FAIL") << "\n";
        }
        out << std::defaultfloat;
        return all ? kOk : kCheckFailed;
    });
}

struct GenOptions {
    std::size_t rows = 0;
    std::size_t cols = 0;
    unsigned degree = 0;
    double prob1 = 1.0;
    double prob2 = 1.0;
    bool spd = false;
    std::string field = "auto";
    std::uint64_t seed = 0;
    std::string output;
};

inline FieldTag resolve_field(const std::string& name, unsigned degree)
{
    if (name == "auto") return degree > 0 ? FieldTag::RatFun : FieldTag::Rational;
    auto tag = parse_field_tag(name);
    if (!tag) throw InputError("unknown field '" + name + "'");
    if (degree > 0 && *tag != FieldTag::RatFun) throw InputError("degree > 0 requires --field ratfun");
    return *tag;
}

inline std::string generate(const GenOptions& o)
{
    if (o.rows == 0) throw InputError("--rows must be positive");
    if (!o.spd && o.cols == 0) throw InputError("--cols must be positive");
    if (o.spd) {
        const FieldTag tag = o.field == "auto" ? FieldTag::Rational : resolve_field(o.field, 0);
        return dispatch_field(tag, [&](auto t) {
            using T = decltype(t);
            return serialize_matrix(random_spd<T>(o.rows, o.seed));
        });
    }
    GenSpec spec;
    spec.rows = o.rows;
    spec.cols = o.cols;
    spec.degree = o.degree;
    spec.prob1 = o.prob1;
    spec.prob2 = o.prob2;
    spec.seed = o.seed;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return dispatch_field(resolve_field(o.field, o.degree), [&](auto t) {
        using T = decltype(t);
        return serialize_matrix(random_matrix<T>(spec));
    });
}

inline int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& /*err*/)
{
    write_payload(generate(o), o.output, out);
    return kOk;
}

// ---------------------------------------------------------------------------
// Benchmark

struct BenchCase {
    std::size_t rows = 0;
    std::size_t cols = 0;
    unsigned degree = 0;
};

struct BenchRecord {
    std::size_t rows = 0;
    std::size_t cols = 0;
    unsigned degree = 0;
    FieldTag field = FieldTag::Rational;
    std::string algorithm;
    std::size_t trials = 0;
    double median_seconds = 0.0;
    double mean_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// The (size, degree) grid of the reference timing table.
inline std::vector<BenchCase> table1_cases()
{
    return {{5, 6, 1}, {5, 6, 2}, {6, 4, 5}, {6, 4, 10}, {10, 11, 1}, {10, 11, 2}, {11, 10, 1}, {11, 10, 2}};
}

/// "5x6,6x4" -> {(5,6), (6,4)}.
inline std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& text)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto x = tok.find('x');
        std::size_t r = 0, c = 0;
        const bool ok = x != std::string::npos &&
                        std::from_chars(tok.data(), tok.data() + x, r).ptr == tok.data() + x &&
                        std::from_chars(tok.data() + x + 1, tok.data() + tok.size(), c).ptr == tok.data() + tok.size();
        if (!ok || r == 0 || c == 0) throw InputError("malformed size token '" + tok + "' (want RxC)");
        out.emplace_back(r, c);
    }
    if (out.empty()) throw InputError("no sizes given");
    return out;
}

inline std::vector<unsigned> parse_degrees(const std::string& text)
{
    std::vector<unsigned> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        unsigned d = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
            throw InputError("malformed degree token '" + tok + "'");
        out.push_back(d);
    }
    if (out.empty()) throw InputError("no degrees given");
    return out;
}

struct BenchOptions {
    std::string sizes;
    std::string degrees = "1";
    bool table1 = false;
    std::size_t trials = 3;
    std::uint64_t seed = 1;
    std::string field = "auto";
    std::string format = "tsv";
    std::string output;
};

namespace detail {

inline std::pair<double, double> median_mean(std::vector<double> t)
{
    std::sort(t.begin(), t.end());
    const double median = t.size() % 2 ? t[t.size() / 2] : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]);
    return {median, std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size())};
}

template <class F>
double seconds(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

/// Generates one fixture set per case (A plus SPD weights), times both
/// recursions over `trials` runs and gates on their outputs agreeing.
/// Throws Error(DegenerateDelta...) from the engines, InputError on bad options;
/// returns false through `gate_ok` when the two outputs differ.
template <Field T>
std::vector<BenchRecord> bench_case(const BenchCase& c, std::size_t trials, std::uint64_t seed, bool& gate_ok)
{
    GenSpec spec;
    spec.rows = c.rows;
    spec.cols = c.cols;
    spec.degree = c.degree;
    spec.seed = split_seed(seed, 0);
    const Matrix<T> a = random_matrix<T>(spec);
    const Matrix<T> m = random_spd<T>(c.rows, split_seed(seed, 1));
    const Matrix<T> n = random_spd<T>(c.cols, split_seed(seed, 2));

    RecursionConfig cfg;
    wmp::detail::check_inputs(a, m, n, cfg); // validation, outside the timed region
    cfg.validate_weights = false;

    std::vector<double> tw, tu;
    SweepResult<T> w, u;
    for (std::size_t t = 0; t < trials; ++t) {
        tw.push_back(detail::seconds([&] { w = wang_sweep(a, m, n, cfg); }));
        tu.push_back(detail::seconds([&] { u = udwadia_sweep(a, m, n, cfg); }));
    }
    gate_ok = compare_inverses(w, u).equivalent(is_exact_v<T>);

    std::vector<BenchRecord> out;
    for (const auto& [name, times] : {std::pair{"wang", tw}, std::pair{"udwadia", tu}}) {
        auto [median, mean] = detail::median_mean(times);
        out.push_back({c.rows, c.cols, c.degree, field_tag_of<T>(), name, trials, median, mean, seed});
    }
    return out;
}

inline std::string format_records(const std::vector<BenchRecord>& recs, const std::string& format)
{
    const char sep = format == "csv" ? ',' : '\t';
    std::ostringstream s;
    s << "rows" << sep << "cols" << sep << "degree" << sep << "field" << sep << "algorithm" << sep << "trials" << sep
      << "median_s" << sep << "mean_s" << sep << "seed\n";
    for (const auto& r : recs) {
        s << r.rows << sep << r.cols << sep << r.degree << sep << to_string(r.field) << sep << r.algorithm << sep
          << r.trials << sep << std::setprecision(6) << std::scientific << r.median_seconds << sep << r.mean_seconds
          << std::defaultfloat << sep << r.seed << "\n";
    }
    return s.str();
}

inline int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.format != "tsv" && o.format != "csv") throw InputError("--format must be tsv or csv");
    if (o.trials == 0) throw InputError("--trials must be at least 1");
    std::vector<BenchCase> cases;
    if (o.table1) {
        cases = table1_cases();
    } else {
        if (o.sizes.empty()) throw InputError("give --sizes or --table1");
        for (auto [r, c] : parse_sizes(o.sizes))
            for (unsigned d : parse_degrees(o.degrees)) cases.push_back({r, c, d});
    }
    for (const auto& c : cases) (void)resolve_field(o.field, c.degree);

    err << "note: timings are for this build and machine; historical reference timings "
           "are not reproduced\n";
    err << "note: generator parameters prob1=1 prob2=1 coefficients in [-10, 10]\n";

    std::vector<BenchRecord> recs;
    std::size_t udwadia_faster = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        bool gate = false;
        auto rows = dispatch_field(resolve_field(o.field, c.degree), [&](auto t) {
            using T = decltype(t);
            return bench_case<T>(c, o.trials, split_seed(o.seed, i), gate);
        });
        if (!gate) {
            err << "error: equivalence gate failed for " << c.rows << "x" << c.cols << " degree " << c.degree << "\n";
            return kCheckFailed;
        }
        udwadia_faster += rows[1].median_seconds < rows[0].median_seconds ? 1 : 0;
        for (auto& r : rows) r.seed = o.seed;
        recs.insert(recs.end(), rows.begin(), rows.end());
    }
    write_payload(format_records(recs, o.format), o.output, out);
    err << "summary: " << cases.size() << " cases, equivalence gate passed in all; udwadia median faster in "
        << udwadia_faster << "/" << cases.size() << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

/// Entry point shared by the executable and the tests. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Weighted Moore-Penrose inverses by column-partitioning recursions", "wmpinv"};
    app.require_subcommand(1);

    InvertOptions inv;
    auto* sc_inv = app.add_subcommand("invert", "compute A^dagger_{M,N}");
    sc_inv->add_option("--matrix", inv.matrix, "matrix file for A")->required();
    sc_inv->add_option("--left-weight", inv.left, "left weight M (m x m), default identity");
    sc_inv->add_option("--right-weight", inv.right, "right weight N (n x n), default identity");
    sc_inv->add_option("--algorithm", inv.algorithm)->check(CLI::IsMember({"wang", "udwadia", "both"}));
    sc_inv->add_option("--tol", inv.tol, "relative zero tolerance for float residual columns")
        ->check(CLI::NonNegativeNumber);
    sc_inv->add_flag("--no-validate", inv.no_validate, "skip the SPD check on the weights");
    sc_inv->add_option("--output", inv.output, "output file (default stdout)");

    VerifyOptions ver;
    auto* sc_ver = app.add_subcommand("verify", "check the four defining equations");
    sc_ver->add_option("--matrix", ver.matrix)->required();
    sc_ver->add_option("--inverse", ver.inverse)->required();
    sc_ver->add_option("--left-weight", ver.left);
    sc_ver->add_option("--right-weight", ver.right);
    sc_ver->add_option("--tol", ver.tol, "float residual threshold relative to max(1, ||A||_F)")
        ->check(CLI::NonNegativeNumber);

    GenOptions gen;
    auto* sc_gen = app.add_subcommand("gen", "generate a random matrix");
    sc_gen->add_option("--rows", gen.rows)->required();
    sc_gen->add_option("--cols", gen.cols);
    sc_gen->add_option("--degree", gen.degree);
    sc_gen->add_option("--prob1", gen.prob1);
    sc_gen->add_option("--prob2", gen.prob2);
    sc_gen->add_flag("--spd", gen.spd, "emit a rows x rows SPD weight (ignores --cols)");
    sc_gen->add_option("--field", gen.field)->check(CLI::IsMember({"auto", "rational", "float", "ratfun"}));
    sc_gen->add_option("--seed", gen.seed)->required();
    sc_gen->add_option("--output", gen.output);

    BenchOptions bench;
    auto* sc_bench = app.add_subcommand("bench", "time both recursions on random cases");
    sc_bench->add_option("--sizes", bench.sizes, "comma list of RxC");
    sc_bench->add_option("--degrees", bench.degrees, "comma list of degrees");
    sc_bench->add_flag("--table1", bench.table1, "run the eight reference (size, degree) cases");
    sc_bench->add_option("--trials", bench.trials);
    sc_bench->add_option("--seed", bench.seed);
    sc_bench->add_option("--field", bench.field)->check(CLI::IsMember({"auto", "rational", "float", "ratfun"}));
    sc_bench->add_option("--format", bench.format)->check(CLI::IsMember({"tsv", "csv"}));
    sc_bench->add_option("--output", bench.output);

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (sc_inv->parsed()) return cmd_invert(inv, out, err);
        if (sc_ver->parsed()) return cmd_verify(ver, out, err);
        if (sc_gen->parsed()) return cmd_gen(gen, out, err);
        if (sc_bench->parsed()) return cmd_bench(bench, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}

} // namespace wmp::cli
