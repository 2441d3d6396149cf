#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colliq/builders.hpp"
#include "colliq/document.hpp"
#include "colliq/factorize.hpp"
#include "colliq/structure.hpp"

namespace {

using namespace colliq;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ArgumentError("cannot write " + path);
    }
    out << text;
}

Document load(const std::string& path) {
    return parse_document(read_file(path));
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string fmt(Complex z) {
    return fmt(z.real()) + " " + fmt(z.imag());
}

/// Accepts "1.5", "-0.25", "0.3+0.4i", "-0.2i", "i", "-i".
Complex parse_complex(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(c) != 0; }), s.end());
    if (s.empty()) {
        throw ArgumentError("empty complex literal");
    }
    const auto to_double = [&](const std::string& part) {
        if (part.empty() || part == "+") {
            return 1.0;
        }
        if (part == "-") {
            return -1.0;
        }
        std::size_t used = 0;
        const double value = std::stod(part, &used);
        if (used != part.size()) {
            throw ArgumentError("bad numeric literal: " + part);
        }
        return value;
    };
    if (s.back() != 'i' && s.back() != 'j') {
        return {to_double(s), 0.0};
    }
    s.pop_back();
    // Split at the sign that separates the real and imaginary parts, skipping
    // a leading sign and exponent signs.
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            return {to_double(s.substr(0, k)), to_double(s.substr(k))};
        }
    }
    return {0.0, to_double(s)};
}

Point parse_point(const std::string& text) {
    Point z;
    std::stringstream ss(text);
    std::string coord;
    while (std::getline(ss, coord, ',')) {
        z.push_back(parse_complex(coord));
    }
    if (z.empty()) {
        throw ArgumentError("empty point");
    }
    return z;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long value = std::stol(item);
        if (value < 0) {
            throw ArgumentError("dimensions must be nonnegative");
        }
        dims.push_back(static_cast<std::size_t>(value));
    }
    if (dims.empty()) {
        throw ArgumentError("empty dimension list");
    }
    return dims;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_split(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> split;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ArgumentError("split pairs look like m:n");
        }
        split.emplace_back(static_cast<std::size_t>(std::stol(item.substr(0, colon))),
                           static_cast<std::size_t>(std::stol(item.substr(colon + 1))));
    }
    return split;
}

void print_report(const StructureReport& report) {
    std::cout << (report.satisfied ? "satisfied" : "violated") << "\n";
    for (const Violation& v : report.violations) {
        std::cout << "  " << v.constraint << " at block (" << v.block_row << "," << v.block_col
                  << ") residual " << fmt(v.residual) << "\n";
    }
    for (const std::string& note : report.notes) {
        std::cout << "  note: " << note << "\n";
    }
}

struct Options {
    double tol = kDefaultTol;
    std::uint64_t seed = kDefaultSeed;
    std::size_t points = kDefaultGridPoints;
    bool seed_given = false;

    VerifyOptions verify() const { return {seed, points, tol, kDefaultPolicy}; }
};

int run_check(const std::string& property, const std::string& path, std::size_t m,
              const Options& opt) {
    const Document doc = load(path);
    StructureReport report;
    if (property == "ball") {
        report = check_ball_factor_structure(doc.ball(), m, opt.tol);
    } else if (property == "fm") {
        report = check_fm(doc.polydisc(), m, opt.tol);
    } else if (property == "fn") {
        report = check_fn(doc.polydisc(), opt.tol);
    } else if (property == "chain") {
        report = check_chain(doc.polydisc(), opt.tol);
    } else if (property == "zero1" || property == "zero2") {
        const Colligation& v = doc.polydisc();
        const int case_id = property == "zero1" ? 1 : 2;
        if (v.partition.split) {
            report = check_zero_origin_nvar(v, case_id, {}, opt.tol);
        } else if (case_id == 1) {
            report = check_zero_origin_case1(v, opt.tol);
        } else if (const auto witness = recover_case2_witness(v, opt.tol)) {
            report = check_zero_origin_case2(v, witness->first, witness->second, opt.tol);
        } else {
            report.satisfied = false;
            report.violations.push_back({"D(1,2) admits a rank-one witness", 0, 1,
                                         frobenius_norm(d_block(v, 0, 1))});
        }
    } else {
        throw ArgumentError("unknown property " + property);
    }
    print_report(report);
    return report.satisfied ? 0 : 1;
}

int run_eval(const std::string& path, const std::string& point_text) {
    const Document doc = load(path);
    const Point z = parse_point(point_text);
    const Complex value = doc.is_ball() ? ball_transfer_eval(doc.ball(), z)
                                        : transfer_eval(doc.polydisc(), z);
    std::cout << fmt15(value.real()) << " " << fmt15(value.imag()) << "\n";
    return 0;
}

int run_grid(const std::string& path, const std::string& out, const Options& opt) {
    const Document doc = load(path);
    GridReport report;
    std::size_t vars = 0;
    if (doc.is_ball()) {
        vars = doc.ball().vars;
        report = ball_transfer_eval_grid(doc.ball(), sample_ball(vars, opt.points, opt.seed));
    } else {
        vars = doc.polydisc().partition.count();
        report = transfer_eval_grid(doc.polydisc(), sample_polydisc(vars, opt.points, opt.seed));
    }
    const std::string csv = grid_report_csv(report, vars);
    if (out.empty()) {
        std::cout << csv;
    } else {
        write_file(out, csv);
    }
    std::cerr << "max_modulus= " << fmt(report.max_modulus) << "\n";
    return 0;
}

int run_product(const std::string& mode, const std::vector<std::string>& files,
                const std::string& out, bool verify, const Options& opt) {
    std::vector<Colligation> inputs;
    inputs.reserve(files.size());
    for (const std::string& f : files) {
        inputs.push_back(load(f).polydisc());
    }
    Colligation result;
    if (mode == "fm") {
        if (inputs.size() != 2) {
            throw ArgumentError("fm product takes exactly two files");
        }
        result = product_fm(inputs[0], inputs[1], verify, opt.verify());
    } else if (mode == "fn") {
        if (inputs.size() != 2) {
            throw ArgumentError("fn product takes exactly two files");
        }
        result = product_fn(inputs[0], inputs[1], verify, opt.verify());
    } else if (mode == "chain") {
        result = product_chain(inputs, verify, opt.verify());
    } else {
        throw ArgumentError("unknown product mode " + mode);
    }
    write_file(out, serialize_document(result));
    if (verify) {
        double residual = 0.0;
        if (mode == "fm") {
            residual = separated_grid_residual(result, inputs[0], inputs[1],
                                               inputs[0].partition.count(), opt.verify());
        } else if (mode == "fn") {
            residual = pointwise_grid_residual(result, inputs[0], inputs[1], opt.verify());
        } else {
            residual = chain_grid_residual(result, inputs, opt.verify());
        }
        std::cout << "residual= " << fmt(residual) << "\n";
    }
    return 0;
}

int run_factor(const std::string& mode, const std::string& path, std::size_t m,
               const std::string& out_left, const std::string& out_right,
               const std::string& out_prefix, bool verify, const Options& opt) {
    const Colligation v = load(path).polydisc();
    if (mode == "chain") {
        const std::vector<Colligation> factors = factor_chain(v, verify, opt.tol, opt.verify());
        if (out_prefix.empty()) {
            throw ArgumentError("chain factoring needs --out-prefix");
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            write_file(out_prefix + std::to_string(i) + ".json", serialize_document(factors[i]));
        }
        if (verify) {
            std::cout << "residual= " << fmt(chain_grid_residual(v, factors, opt.verify())) << "\n";
        }
        return 0;
    }
    FactorizationResult result;
    if (mode == "fm") {
        result = factor_fm(v, m, verify, opt.tol, opt.verify());
    } else if (mode == "fn") {
        result = factor_fn(v, verify, opt.tol, opt.verify());
    } else if (mode == "zero1") {
        result = v.partition.split ? factor_zero_origin_nvar(v, 1, {}, verify, opt.tol, opt.verify())
                                   : factor_zero_origin_case1(v, verify, opt.tol, opt.verify());
    } else if (mode == "zero2") {
        if (v.partition.split) {
            result = factor_zero_origin_nvar(v, 2, {}, verify, opt.tol, opt.verify());
        } else {
            const auto witness = recover_case2_witness(v, opt.tol);
            if (!witness) {
                throw StructureError("coupling block admits no rank-one witness");
            }
            result = factor_zero_origin_case2(v, witness->first, witness->second, verify, opt.tol,
                                              opt.verify());
        }
    } else {
        throw ArgumentError("unknown factor mode " + mode);
    }
    if (out_left.empty() || out_right.empty()) {
        throw ArgumentError("factoring needs --out-left and --out-right");
    }
    write_file(out_left, serialize_document(result.left));
    write_file(out_right, serialize_document(result.right));
    std::cout << "alpha= " << fmt(result.alpha) << "\n";
    std::cout << "beta= " << fmt(result.beta) << "\n";
    if (verify) {
        std::cout << "residual= " << fmt(result.residual) << "\n";
    }
    return 0;
}

int run_roundtrip(const std::string& left, const std::string& right, const Options& opt) {
    const Colligation v1 = load(left).polydisc();
    const Colligation v2 = load(right).polydisc();
    const RoundtripReport report = product_factor_roundtrip(v1, v2, opt.tol);
    std::cout << "epsilon= " << fmt(report.epsilon) << "\n";
    std::cout << "deviation= " << fmt(report.max_deviation) << "\n";
    return report.max_deviation <= 1e-9 ? 0 : 1;
}

int run_random(const std::string& kind, const std::string& dims_text, const std::string& split_text,
               std::size_t m, std::size_t vars, const std::string& out, const Options& opt) {
    if (kind == "ball") {
        const std::vector<std::size_t> dims = parse_dims(dims_text);
        if (dims.size() != 1) {
            throw ArgumentError("ball kind takes a single component dimension");
        }
        std::optional<std::pair<std::size_t, std::size_t>> split;
        if (!split_text.empty()) {
            const auto pairs = parse_split(split_text);
            if (pairs.size() != 1) {
                throw ArgumentError("ball split is a single d1:d2 pair");
            }
            split = pairs.front();
        }
        const BallColligation v = random_isometric_ball_colligation(vars, dims[0], opt.seed, split);
        write_file(out, serialize_document(v));
        return 0;
    }
    if (dims_text.empty() && split_text.empty()) {
        throw ArgumentError("either --dims or --split is required");
    }
    SpacePartition partition;
    if (!split_text.empty()) {
        partition.split = parse_split(split_text);
        for (const auto& [mi, ni] : *partition.split) {
            partition.dims.push_back(mi + ni);
        }
    } else {
        partition.dims = parse_dims(dims_text);
    }
    Colligation v;
    if (kind == "iso") {
        v = random_isometric_colligation(partition, opt.seed);
    } else if (kind == "fm") {
        v = random_structured_colligation(StructuredKind::fm, partition, m, opt.seed);
    } else if (kind == "fn") {
        v = random_structured_colligation(StructuredKind::fn, partition, 0, opt.seed);
    } else if (kind == "chain") {
        v = random_structured_colligation(StructuredKind::chain, partition, 0, opt.seed);
    } else if (kind == "zero1") {
        v = random_structured_colligation(StructuredKind::zero_origin_1, partition, 0, opt.seed);
    } else if (kind == "zero2") {
        v = random_structured_colligation(StructuredKind::zero_origin_2, partition, 0, opt.seed);
    } else {
        throw ArgumentError("unknown random kind " + kind);
    }
    write_file(out, serialize_document(v));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isometric colligations: transfer functions, structure checks, factorizations"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    Options opt;
    std::string tol_text;
    app.add_option("--tol", opt.tol, "structure and verification tolerance")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", opt.seed, "seed for sampling and generation");
    app.add_option("--points", opt.points, "grid point count")->capture_default_str();

    std::string property, mode, kind = "iso", file, file2, point_text, dims_text, split_text;
    std::string out, out_left, out_right, out_prefix;
    std::size_t m = 1, pad = 0, vars = 1;
    bool verify = false;
    Complex lambda;
    std::string lambda_text;
    std::vector<std::string> files;

    auto* check = app.add_subcommand("check", "run a structure check against a document");
    check->add_option("--property", property, "fm|fn|chain|zero1|zero2|ball")->required();
    check->add_option("--m", m, "leading group size for fm/ball");
    check->add_option("file", file)->required();

    auto* eval = app.add_subcommand("eval", "evaluate the transfer function at a point");
    eval->add_option("--point", point_text, "comma-separated coordinates, e.g. 0.1,0.2+0.3i")->required();
    eval->add_option("file", file)->required();

    auto* grid = app.add_subcommand("grid", "evaluate on a seeded grid and emit CSV");
    grid->add_option("--out", out, "CSV path (stdout when omitted)");
    grid->add_option("file", file)->required();

    auto* product = app.add_subcommand("product", "combine factor documents");
    product->add_option("--mode", mode, "fm|fn|chain")->required();
    product->add_flag("--verify", verify, "verify the transfer identity on a grid");
    product->add_option("--out", out)->required();
    product->add_option("files", files)->required();

    auto* factor = app.add_subcommand("factor", "extract factors from a structured document");
    factor->add_option("--mode", mode, "fm|fn|chain|zero1|zero2")->required();
    factor->add_option("--m", m, "leading group size for fm");
    factor->add_flag("--verify", verify, "verify the transfer identity on a grid");
    factor->add_option("--out-left", out_left);
    factor->add_option("--out-right", out_right);
    factor->add_option("--out-prefix", out_prefix, "prefix for chain factor files");
    factor->add_option("file", file)->required();

    auto* embed = app.add_subcommand("embed", "widen a separated pattern into a paired-split one");
    embed->add_option("--m", m)->required();
    embed->add_option("--pad", pad, "padding dimension per block")->capture_default_str();
    embed->add_option("--out", out)->required();
    embed->add_option("file", file)->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "product then extraction, gauge deviation");
    roundtrip->add_option("left", file)->required();
    roundtrip->add_option("right", file2)->required();

    auto* random = app.add_subcommand("random", "generate a random (structured) document");
    random->add_option("--kind", kind, "iso|fm|fn|chain|zero1|zero2|ball")->capture_default_str();
    random->add_option("--dims", dims_text, "comma-separated block dimensions");
    random->add_option("--split", split_text, "paired split, e.g. 1:1,2:1");
    random->add_option("--m", m, "leading group size for fm");
    random->add_option("--vars", vars, "variable count for ball");
    random->add_option("--out", out)->required();

    auto* blaschke = app.add_subcommand("blaschke", "disc automorphism colligation");
    blaschke->add_option("--lambda", lambda_text, "complex parameter, |lambda| < 1")->required();
    blaschke->add_option("--out", out)->required();

    auto* monomial = app.add_subcommand("monomial", "power function colligation");
    monomial->add_option("--m", m, "degree")->required();
    monomial->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!*seed_opt) {
        if (const char* env = std::getenv("COLLIQ_SEED")) {
            opt.seed = std::strtoull(env, nullptr, 10);
        }
    }

    try {
        if (*check) {
            return run_check(property, file, m, opt);
        }
        if (*eval) {
            return run_eval(file, point_text);
        }
        if (*grid) {
            return run_grid(file, out, opt);
        }
        if (*product) {
            return run_product(mode, files, out, verify, opt);
        }
        if (*factor) {
            return run_factor(mode, file, m, out_left, out_right, out_prefix, verify, opt);
        }
        if (*embed) {
            const Colligation v = load(file).polydisc();
            write_file(out, serialize_document(embed_fm_into_fn(v, m, pad, opt.tol)));
            return 0;
        }
        if (*roundtrip) {
            return run_roundtrip(file, file2, opt);
        }
        if (*random) {
            return run_random(kind, dims_text, split_text, m, vars, out, opt);
        }
        if (*blaschke) {
            lambda = parse_complex(lambda_text);
            write_file(out, serialize_document(blaschke_colligation(lambda)));
            return 0;
        }
        if (*monomial) {
            write_file(out, serialize_document(monomial_colligation(m)));
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SingularMatrixError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        // structure, zero-constant, isometry and verification failures
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
