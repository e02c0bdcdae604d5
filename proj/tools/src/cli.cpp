#include "subapprox/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "subapprox/bounds.hpp"
#include "subapprox/constructions.hpp"
#include "subapprox/enumeration.hpp"

namespace subapprox::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string Descriptor::canonical_json() const {
    json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["precision"] = precision;
    j["hmax"] = hmax;
    j["work_limit"] = work_limit;
    return j.dump();
}

std::string Descriptor::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_json())));
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

struct Common {
    long precision = 128;
    std::string hmax;
    std::uint64_t seed = 1;
    std::uint64_t work_limit = 100000000;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    std::string format;
    bool exact = false;
};

struct Output {
    std::string body;
    bool partial = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--precision-bits", c.precision, "Working precision in bits")
        ->envname("SUBAPPROX_PRECISION_BITS")
        ->check(CLI::Range(16L, 1L << 24));
    sub->add_option("--hmax", c.hmax, "Height cutoff")->envname("SUBAPPROX_HMAX");
    sub->add_option("--seed", c.seed, "Random seed")->envname("SUBAPPROX_SEED");
    sub->add_option("--work-limit", c.work_limit, "Enumeration work limit")->envname("SUBAPPROX_WORK_LIMIT");
    sub->add_option("--workers", c.workers, "Worker threads")->envname("SUBAPPROX_WORKERS")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "Output file (default: stdout)")->envname("SUBAPPROX_OUT");
    sub->add_option("--format", c.format, "csv, json or table")
        ->envname("SUBAPPROX_FORMAT")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    sub->add_flag("--exact", c.exact, "Rationals only in tables")->envname("SUBAPPROX_EXACT");
}

std::string version() { return SUBAPPROX_VERSION; }

Descriptor make_descriptor(const std::string& command, const Common& c, std::map<std::string, std::string> params) {
    Descriptor d;
    d.command = command;
    d.parameters = std::move(params);
    d.seed = c.seed;
    d.precision = c.precision;
    d.hmax = c.hmax;
    d.work_limit = c.work_limit;
    if (!c.out.empty()) d.outputs.push_back(c.out);
    return d;
}

json descriptor_json(const Descriptor& d) {
    json j = json::parse(d.canonical_json());
    j["hash"] = d.hash();
    return j;
}

std::string csv_preamble(const Descriptor& d, bool partial) {
    std::string s = "# subapprox " + version() + " descriptor " + d.hash() + "\n";
    if (partial) s += "# partial: true\n";
    return s;
}

// ---------------------------------------------------------------------------
// Parsing helpers

Rat parse_rat(const std::string& text) {
    try {
        Rat q(text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ValidationError("not a rational number: " + text);
    }
}

Real parse_real(std::string text, mpfr_prec_t prec) {
    text.erase(std::remove_if(text.begin(), text.end(), ::isspace), text.end());
    static const std::regex sqrt_re(R"(sqrt\(([^)]+)\))");
    std::smatch m;
    if (std::regex_match(text, m, sqrt_re)) return sqrt(parse_real(m[1], prec));
    if (text.find('/') != std::string::npos) return Real(parse_rat(text), prec);
    try {
        return Real::parse(text, prec);
    } catch (const std::invalid_argument&) {
        throw ValidationError("not a real number: " + text);
    }
}

double parse_hmax(const Common& c, bool required) {
    if (c.hmax.empty()) {
        if (required) throw ValidationError("--hmax is required");
        return 0;
    }
    const double h = parse_real(c.hmax, 64).to_double();
    if (!(h >= 1)) throw ValidationError("--hmax must be at least 1");
    return h;
}

// "(1,0,2,0),(0,1,0,3)": one parenthesized group per basis vector.
std::vector<std::vector<std::string>> parse_groups(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> entries;
    std::string tok;
    int depth = 0;
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '(' && depth++ == 0) continue;
        if (ch == ')' && --depth == 0) {
            if (!tok.empty()) entries.push_back(tok);
            out.push_back(entries);
            entries.clear();
            tok.clear();
            continue;
        }
        if (depth < 0) throw ValidationError("basis: unbalanced parentheses");
        if (depth == 0) {
            if (ch != ',') throw ValidationError("basis: expected vectors like (1,0,2,0),(0,1,0,3)");
            continue;
        }
        if (ch == ',' && depth == 1) {
            entries.push_back(tok);
            tok.clear();
        } else {
            tok += ch;
        }
    }
    if (depth != 0) throw ValidationError("basis: unbalanced parentheses");
    if (out.empty()) throw ValidationError("basis: expected vectors like (1,0,2,0),(0,1,0,3)");
    for (const auto& g : out)
        if (g.size() != out[0].size() || g.empty()) throw ValidationError("basis: vectors of unequal length");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// One basis vector per line, entries separated by commas or blanks.
std::string lines_to_groups(const std::string& text) {
    std::string out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ' ', ',');
        out += "(" + line + "),";
    }
    return out;
}

std::string join(const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
    return s;
}

// Deterministic target: entries uniform in (-1, 1) built from raw engine bits.
RealSubspace random_target(int n, int d, std::uint64_t seed, mpfr_prec_t prec) {
    if (n < 2 || d < 1 || d >= n) throw ValidationError("random target: need 1 <= d < n");
    std::mt19937_64 gen(seed);
    RealMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(d));
    for (auto& x : m.a) {
        const double hi = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double lo = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x = Real(2 * hi - 1, prec) + Real(lo, prec) * pow2(-53, prec);
    }
    return make_real_subspace(m, "random");
}

struct TargetOptions {
    std::string kind = "r4";
    std::string xi = "sqrt(2)";
    std::string zeta3 = "2";
    int ell = 1;
    std::string beta = "3";
    int big_n = 3;
    int n = 4, d = 2;
    std::string basis;

    void add(CLI::App* sub) {
        sub->add_option("--target", kind, "r4, r5, spectrum, random or basis")
            ->check(CLI::IsMember({"r4", "r5", "spectrum", "random", "basis"}));
        sub->add_option("--xi", xi, "r4 parameter in (0, sqrt 7)");
        sub->add_option("--zeta3", zeta3, "r5 parameter, at least 5/4");
        sub->add_option("--l", ell, "spectrum block size");
        sub->add_option("--beta", beta, "spectrum exponent (rational)");
        sub->add_option("--N", big_n, "spectrum: truncation uses K = N + 1");
        sub->add_option("--n", n, "ambient dimension of a random target");
        sub->add_option("--d", d, "dimension of a random target");
        sub->add_option("--basis", basis, "real basis vectors (x,..),(y,..)");
    }
    void record(std::map<std::string, std::string>& p) const {
        p["target"] = kind;
        if (kind == "r4") p["xi"] = xi;
        if (kind == "r5") p["zeta3"] = zeta3;
        if (kind == "spectrum") {
            p["l"] = std::to_string(ell);
            p["beta"] = beta;
            p["N"] = std::to_string(big_n);
        }
        if (kind == "random") {
            p["n"] = std::to_string(n);
            p["d"] = std::to_string(d);
        }
        if (kind == "basis") p["basis"] = basis;
    }
    RealSubspace build(std::uint64_t seed, mpfr_prec_t prec) const {
        if (kind == "r4") return construct_r4(parse_real(xi, prec), prec).a;
        if (kind == "r5") return construct_r5(parse_real(zeta3, prec), prec).a;
        if (kind == "random") return random_target(n, d, seed, prec);
        if (kind == "spectrum") {
            SpectrumConfig cfg;
            cfg.ell = ell;
            cfg.beta = parse_rat(beta);
            cfg.seed = seed;
            cfg.precision = std::max<mpfr_prec_t>(prec, spectrum_required_precision(cfg, big_n + 1));
            return spectrum_build(cfg, big_n + 1).a;
        }
        const auto groups = parse_groups(basis);
        RealMatrix m(groups[0].size(), groups.size());
        for (std::size_t k = 0; k < groups.size(); ++k)
            for (std::size_t i = 0; i < groups[k].size(); ++i) m(i, k) = parse_real(groups[k][i], prec);
        return make_real_subspace(m, "basis");
    }
};

// ---------------------------------------------------------------------------
// Commands

Output cmd_plucker(const std::string& basis, const std::string& file, const std::string& format, const Descriptor& desc) {
    std::string text = basis;
    if (!file.empty()) text = lines_to_groups(read_file(file));
    if (text.empty()) throw ValidationError("plucker: give --basis or --file");
    const auto groups = parse_groups(text);
    RatMatrix m(groups[0].size(), groups.size());
    for (std::size_t k = 0; k < groups.size(); ++k)
        for (std::size_t i = 0; i < groups[k].size(); ++i) m(i, k) = parse_rat(groups[k][i]);
    if (m.cols > m.rows) throw ValidationError("plucker: more vectors than coordinates");
    const RationalSubspace b = from_basis(m);
    const bool ok = check_relations(b.plucker.coords, plucker_relations(b.e, b.n));
    const Real h = b.height();
    std::ostringstream os;
    if (format == "json") {
        ojson j;
        j["version"] = version();
        j["descriptor"] = descriptor_json(desc);
        j["n"] = b.n;
        j["e"] = b.e;
        std::vector<std::string> coords;
        for (const auto& x : b.plucker.coords) coords.push_back(x.get_str());
        j["plucker"] = coords;
        j["height_sq"] = b.height_squared.get_str();
        j["height"] = h.to_hex();
        j["relations_hold"] = ok;
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << csv_preamble(desc, false) << "n,e,height_sq,height,plucker\n";
        os << b.n << ',' << b.e << ',' << b.height_squared.get_str() << ',' << h.to_hex() << ',' << join(b.plucker.coords) << '\n';
    } else {
        os << "plucker " << join(b.plucker.coords) << '\n';
        os << "height_sq " << b.height_squared.get_str() << '\n';
        os << "height " << h.to_decimal(20) << '\n';
        os << "relations " << (ok ? "ok" : "violated") << '\n';
    }
    return {os.str(), false};
}

Output cmd_bounds(const std::vector<int>& inst, int table, const Common& c, const std::string& format,
                  const Descriptor& desc) {
    std::ostringstream os;
    if (table > 0) {
        const auto doc = render_tables(table);
        if (format == "csv") {
            os << csv_preamble(desc, false) << to_csv(doc, c.exact);
        } else if (format == "json") {
            ojson j;
            j["version"] = version();
            j["descriptor"] = descriptor_json(desc);
            j["n_max"] = table;
            j["entries"] = ojson::array();
            for (const auto& e : doc.entries) j["entries"].push_back(ojson::parse(to_json(e)));
            os << j.dump(2) << '\n';
        } else {
            os << to_text(doc, c.exact);
        }
        return {os.str(), false};
    }
    if (inst.size() != 4) throw ValidationError("bounds: give n d e j or --table N");
    const auto b = known_bounds(ProblemInstance::make(inst[0], inst[1], inst[2], inst[3]));
    const std::string hi = b.upper ? format_rational(*b.upper) : "inf";
    if (format == "json") {
        ojson j;
        j["version"] = version();
        j["descriptor"] = descriptor_json(desc);
        j["bounds"] = ojson::parse(to_json(b));
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << csv_preamble(desc, false) << "n,d,e,j,lower,upper\n"
           << inst[0] << ',' << inst[1] << ',' << inst[2] << ',' << inst[3] << ',' << format_rational(b.lower) << ',' << hi
           << '\n';
    } else {
        os << format_rational(b.lower) << ' ' << hi << '\n';
        if (!c.exact) {
            os << "decimal " << Real(b.lower, 64).to_decimal(10) << ' '
               << (b.upper ? Real(*b.upper, 64).to_decimal(10) : std::string("inf")) << '\n';
            for (const auto& ct : b.contributions)
                if (ct.applies) os << "  " << ct.tag << ' ' << format_rational(*ct.value) << '\n';
            for (const auto& a : b.annotations) os << "  note " << a << '\n';
        }
    }
    return {os.str(), false};
}

std::string enumeration_body(const EnumerationResult& r, const EnumerationPlan& plan, const std::string& format,
                             const Descriptor& desc, bool partial) {
    std::ostringstream os;
    if (format == "json") {
        ojson j;
        j["version"] = version();
        j["descriptor"] = descriptor_json(desc);
        j["partial"] = partial;
        j["complete"] = r.complete && !partial;
        if (!r.complete) j["note"] = "heuristic scan: completeness not claimed";
        j["subspaces"] = ojson::array();
        for (const auto& b : r.subspaces) {
            ojson e;
            e["height_sq"] = b.height_squared.get_str();
            std::vector<std::string> coords;
            for (const auto& x : b.plucker.coords) coords.push_back(x.get_str());
            e["plucker"] = coords;
            j["subspaces"].push_back(e);
        }
        os << j.dump(2) << '\n';
    } else if (format == "table") {
        for (const auto& b : r.subspaces)
            os << "H^2 = " << b.height_squared.get_str() << "  [" << join(b.plucker.coords) << "]\n";
    } else {
        os << csv_preamble(desc, partial);
        if (!r.complete) os << "# heuristic scan: completeness not claimed\n";
        os << enumeration_csv(r, plan.n, plan.e, true);
    }
    return os.str();
}

std::string frontier_body(const Frontier& f, const std::string& format, const Descriptor& desc, bool partial) {
    std::ostringstream os;
    if (format == "json") {
        ojson j;
        j["version"] = version();
        j["descriptor"] = descriptor_json(desc);
        j["partial"] = partial;
        j["label"] = f.label;
        j["strategy"] = to_string(f.strategy);
        j["n"] = f.n;
        j["d"] = f.d;
        j["e"] = f.e;
        j["j"] = f.j;
        j["precision"] = f.precision;
        j["records"] = ojson::array();
        for (const auto& r : f.records) {
            ojson e;
            e["height_sq"] = r.b.height_squared.get_str();
            e["psi_j"] = r.psi.to_hex();
            std::vector<std::string> coords;
            for (const auto& x : r.b.plucker.coords) coords.push_back(x.get_str());
            e["plucker"] = coords;
            j["records"].push_back(e);
        }
        os << j.dump(2) << '\n';
    } else if (format == "table") {
        os << f.label << " (n,d,e,j) = (" << f.n << ',' << f.d << ',' << f.e << ',' << f.j << ")\n";
        for (const auto& r : f.records)
            os << "H = " << r.height.to_decimal(12) << "  psi = " << r.psi.to_decimal(12) << "  [" << join(r.b.plucker.coords)
               << "]\n";
    } else {
        os << csv_preamble(desc, partial) << "# " << f.label << '\n' << frontier_csv(f, true);
    }
    return os.str();
}

Output cmd_fit(const std::string& path, const std::string& format, const Descriptor& desc) {
    std::stringstream ss(read_file(path));
    std::string line;
    std::vector<std::string> header;
    std::vector<ApproximationRecord> records;
    auto split = [](const std::string& s) {
        std::vector<std::string> v;
        std::stringstream ls(s);
        std::string tok;
        while (std::getline(ls, tok, ',')) v.push_back(tok);
        return v;
    };
    long hcol = -1, pcol = -1;
    bool squared = false;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line);
        if (header.empty()) {
            header = cells;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (cells[i] == "height_sq") {
                    hcol = static_cast<long>(i);
                    squared = true;
                } else if (cells[i] == "height" && hcol < 0) {
                    hcol = static_cast<long>(i);
                } else if (cells[i] == "psi_j" || cells[i] == "psi") {
                    pcol = static_cast<long>(i);
                }
            }
            if (hcol < 0 || pcol < 0) throw ValidationError("fit: need height_sq (or height) and psi_j (or psi) columns");
            continue;
        }
        if (static_cast<long>(cells.size()) <= std::max(hcol, pcol)) throw ValidationError("fit: short row");
        Real h = parse_real(cells[static_cast<std::size_t>(hcol)], 128);
        if (squared) h = sqrt(h);
        const Real p = parse_real(cells[static_cast<std::size_t>(pcol)], 128);
        ApproximationRecord r;
        r.height = h;
        r.psi = p;
        records.push_back(std::move(r));
    }
    const ExponentFit fit = fit_exponent(records);
    std::ostringstream os;
    if (format == "json") {
        ojson j;
        j["version"] = version();
        j["descriptor"] = descriptor_json(desc);
        j["beta"] = fit.beta;
        j["records_used"] = fit.records_used;
        j["residual"] = fit.residual;
        j["height_min"] = fit.height_min;
        j["height_max"] = fit.height_max;
        j["min_scaled"] = fit.min_scaled;
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%a,%zu,%a,%a,%a,%a\n", fit.beta, fit.records_used, fit.residual, fit.height_min,
                      fit.height_max, fit.min_scaled);
        os << csv_preamble(desc, false) << "beta,records,residual,height_min,height_max,min_scaled\n" << buf;
    } else {
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "beta %.10g\nrecords %zu\nresidual %.3g\nheights [%.6g, %.6g]\nmin psi*H^beta %.6g\n", fit.beta,
                      fit.records_used, fit.residual, fit.height_min, fit.height_max, fit.min_scaled);
        os << buf;
    }
    return {os.str(), false};
}

std::vector<std::uint64_t> parse_schedule(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            const double v = std::stod(tok);
            if (v < 1) throw ValidationError("schedule entries must be at least 1");
            out.push_back(static_cast<std::uint64_t>(v));
        } catch (const std::logic_error&) {
            throw ValidationError("bad schedule entry: " + tok);
        }
    }
    if (out.empty()) throw ValidationError("empty schedule");
    return out;
}

struct ConstructOptions {
    std::string kind;
    TargetOptions target;
    int bound = 20;
    bool infinite = false;
    int e = 2, j = 2;
    std::string schedule = "10,100,1000,10000,100000";
    double budget = 4.0;
};

std::string hex_list(const std::vector<Real>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].to_hex();
    return s;
}

Output cmd_construct(const ConstructOptions& o, const Common& c, const std::string& format, const Descriptor& desc) {
    const auto prec = static_cast<mpfr_prec_t>(c.precision);
    std::ostringstream os;
    ojson j;
    j["version"] = version();
    j["descriptor"] = descriptor_json(desc);
    j["construction"] = o.kind;
    if (o.kind == "r4") {
        const auto r = construct_r4(parse_real(o.target.xi, prec), prec);
        if (format == "json") {
            j["xi"] = r.xi.to_hex();
            j["s"] = r.s.to_hex();
            std::vector<std::string> p;
            for (const auto& x : r.plucker) p.push_back(x.to_hex());
            j["plucker"] = p;
            os << j.dump(2) << '\n';
        } else if (format == "csv") {
            os << csv_preamble(desc, false) << "xi,s,plucker\n" << r.xi.to_hex() << ',' << r.s.to_hex() << ',' << hex_list(r.plucker) << '\n';
        } else {
            os << "xi " << r.xi.to_decimal(20) << "\ns  " << r.s.to_decimal(20) << "\nplucker";
            for (const auto& x : r.plucker) os << ' ' << x.to_decimal(12);
            os << '\n';
        }
        return {os.str(), false};
    }
    if (o.kind == "r5") {
        const auto r = construct_r5(parse_real(o.target.zeta3, prec), prec);
        const auto obs = r5_obstruction_search(o.bound);
        std::vector<std::string> cubic;
        for (const auto& x : r5_rational_root_candidates()) cubic.push_back(format_rational(x) + ":" + format_rational(r5_cubic(x)));
        if (format == "json") {
            j["zeta"] = ojson::array();
            for (const auto& z : r.zeta) j["zeta"].push_back(z.to_hex());
            j["xi"] = ojson::array();
            for (const auto& x : r.xi) j["xi"].push_back(x.to_hex());
            j["max_residual"] = r.max_residual.to_hex();
            j["reconstruction_defect"] = r.reconstruction_defect.to_hex();
            j["cubic_at_candidates"] = cubic;
            j["obstruction_bound"] = o.bound;
            j["obstruction_empty"] = obs.empty;
            j["obstruction_nodes"] = obs.nodes;
            j["note"] = r.note;
            os << j.dump(2) << '\n';
        } else if (format == "csv") {
            os << csv_preamble(desc, false) << "field,value\n";
            os << "zeta," << hex_list(r.zeta) << "\nxi," << hex_list(r.xi) << "\nmax_residual," << r.max_residual.to_hex()
               << "\nreconstruction_defect," << r.reconstruction_defect.to_hex() << "\nobstruction_empty," << (obs.empty ? 1 : 0)
               << "\nobstruction_nodes," << obs.nodes << '\n';
        } else {
            os << "zeta";
            for (const auto& z : r.zeta) os << ' ' << z.to_decimal(15);
            os << "\nxi";
            for (const auto& x : r.xi) os << ' ' << x.to_decimal(12);
            os << "\nmax relation residual " << r.max_residual.to_decimal(5) << "\nP at";
            for (const auto& s : cubic) os << ' ' << s;
            os << "\nobstruction search (bound " << o.bound << "): " << (obs.empty ? "no nonzero solution" : "solution found")
               << ", " << obs.nodes << " nodes\n" << r.note << '\n';
        }
        return {os.str(), false};
    }
    if (o.kind == "spectrum") {
        SpectrumConfig cfg;
        cfg.ell = o.target.ell;
        cfg.beta = o.infinite ? Rat(0) : parse_rat(o.target.beta);
        cfg.seed = c.seed;
        cfg.infinite_variant = o.infinite;
        const int big_k = o.target.big_n + 1;
        if (o.target.big_n < 1) throw ValidationError("spectrum: --N must be at least 1");
        cfg.precision = std::max<mpfr_prec_t>(prec, spectrum_required_precision(cfg, big_k));
        const auto s = spectrum_build(cfg, big_k);
        const int jj = cfg.ell;
        if (format == "json") {
            j["theta"] = s.theta.get_str();
            j["alpha"] = format_rational(s.alpha);
            j["precision_used"] = s.precision;
            j["records"] = ojson::array();
        } else if (format == "csv") {
            os << csv_preamble(desc, false) << "# precision " << s.precision << "\nN,minor_gcd,height_sq,psi_j,exponent\n";
        } else {
            os << "theta " << s.theta.get_str() << "  precision " << s.precision << '\n';
        }
        for (int nn = 1; nn <= o.target.big_n; ++nn) {
            const auto ap = spectrum_B_N(s, nn);
            const Real ps = psi(s.a, ap.b, jj);
            const Real h = ap.b.height(s.precision);
            const Real ex = ps.sign() > 0 ? -log(ps) / log(h) : Real(0L, s.precision);
            if (format == "json") {
                ojson r;
                r["N"] = nn;
                r["minor_gcd"] = ap.minor_gcd.get_str();
                r["height_sq"] = ap.b.height_squared.get_str();
                r["psi_j"] = ps.to_hex();
                r["exponent"] = ex.to_hex();
                j["records"].push_back(r);
            } else if (format == "csv") {
                os << nn << ',' << ap.minor_gcd.get_str() << ',' << ap.b.height_squared.get_str() << ',' << ps.to_hex() << ','
                   << ex.to_hex() << '\n';
            } else {
                os << "N " << nn << "  gcd " << ap.minor_gcd.get_str() << "  log2 H " << (log(h) / log(Real(2L, 64))).to_decimal(10)
                   << "  psi " << ps.to_decimal(8) << "  exponent " << ex.to_decimal(10) << '\n';
            }
        }
        if (format == "json") os << j.dump(2) << '\n';
        return {os.str(), false};
    }
    // pipeline
    const RealSubspace f = o.target.build(c.seed, prec);
    const auto res = lower_bound_pipeline(f, o.e, o.j, parse_schedule(o.schedule), o.budget);
    if (format == "json") {
        j["beta"] = format_rational(res.beta);
        j["coordinates"] = res.coordinates;
        j["emissions"] = ojson::array();
    } else if (format == "csv") {
        os << csv_preamble(desc, false) << "# beta " << format_rational(res.beta) << "\nQ,q,height_sq,psi_j,scaled,exponent,verified\n";
    } else {
        os << "(n,d,e,j) = (" << res.n << ',' << res.d << ',' << res.e << ',' << res.j << ")  beta " << format_rational(res.beta)
           << "  coordinates " << res.coordinates << '\n';
    }
    for (const auto& em : res.emissions) {
        if (format == "json") {
            ojson r;
            r["Q"] = em.big_q;
            r["q"] = em.q.get_str();
            r["height_sq"] = em.c.height_squared.get_str();
            r["psi_j"] = em.psi.to_hex();
            r["scaled"] = em.scaled.to_hex();
            r["exponent"] = Real(em.exponent, 64).to_hex();
            r["verified"] = em.dirichlet_verified;
            j["emissions"].push_back(r);
        } else if (format == "csv") {
            os << em.big_q << ',' << em.q.get_str() << ',' << em.c.height_squared.get_str() << ',' << em.psi.to_hex() << ','
               << em.scaled.to_hex() << ',' << Real(em.exponent, 64).to_hex() << ',' << (em.dirichlet_verified ? 1 : 0) << '\n';
        } else {
            os << "Q " << em.big_q << "  q " << em.q.get_str() << "  H " << em.height.to_decimal(8) << "  psi " << em.psi.to_decimal(8)
               << "  psi*H^beta " << em.scaled.to_decimal(6) << '\n';
        }
    }
    if (format == "json") os << j.dump(2) << '\n';
    return {os.str(), false};
}

void emit(const Common& c, const Output& o, std::ostream& out) {
    if (c.out.empty()) {
        out << o.body;
    } else {
        write_atomic(c.out, o.body);
    }
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diophantine approximation of subspaces: heights, angles, frontiers, constructions, bounds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    Common common;

    auto* plucker = app.add_subcommand("plucker", "Plücker embedding and height of a rational basis");
    std::string basis, basis_file;
    plucker->add_option("--basis", basis, "basis vectors, e.g. (1,0,2,0),(0,1,0,3)");
    plucker->add_option("--file", basis_file, "file with one basis vector per line");
    add_common(plucker, common);

    auto* bounds = app.add_subcommand("bounds", "Known bounds for the exponent mu(n,d,e,j)");
    std::vector<int> inst;
    int table = 0;
    bounds->add_option("instance", inst, "n d e j")->expected(0, 4);
    bounds->add_option("--table", table, "render all instances with n <= N (2..6)");
    add_common(bounds, common);

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Rational subspaces up to a height");
    EnumerationPlan plan;
    std::string strategy = "exhaustive";
    enumerate_cmd->add_option("--n", plan.n, "ambient dimension")->required();
    enumerate_cmd->add_option("--e", plan.e, "subspace dimension")->required();
    enumerate_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"exhaustive", "heuristic"}));
    enumerate_cmd->add_option("--effort", plan.effort, "heuristic effort");
    add_common(enumerate_cmd, common);

    auto* frontier_cmd = app.add_subcommand("frontier", "Best-approximation frontier of a target subspace");
    TargetOptions target;
    int fe = 2, fj = 1;
    frontier_cmd->add_option("--e", fe, "dimension of the approximants");
    frontier_cmd->add_option("--j", fj, "angle index");
    frontier_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"exhaustive", "heuristic"}));
    frontier_cmd->add_option("--effort", plan.effort, "heuristic effort");
    target.add(frontier_cmd);
    add_common(frontier_cmd, common);

    auto* fit_cmd = app.add_subcommand("fit", "Least-squares exponent of a frontier file");
    std::string fit_in;
    fit_cmd->add_option("--in,input", fit_in, "CSV with height_sq/height and psi_j/psi columns")->required();
    add_common(fit_cmd, common);

    auto* construct = app.add_subcommand("construct", "Explicit constructions");
    ConstructOptions co;
    construct->add_option("kind", co.kind, "r4, r5, spectrum or pipeline")
        ->required()
        ->check(CLI::IsMember({"r4", "r5", "spectrum", "pipeline"}));
    co.target.kind = "random";
    co.target.n = 5;
    co.target.add(construct);
    construct->add_option("--bound", co.bound, "r5 obstruction search bound");
    construct->add_flag("--infinite", co.infinite, "spectrum with denominators 3^{k^k}");
    construct->add_option("--e", co.e, "pipeline approximant dimension");
    construct->add_option("--j", co.j, "pipeline angle index");
    construct->add_option("--schedule", co.schedule, "pipeline Dirichlet bounds Q, comma separated");
    construct->add_option("--budget", co.budget, "going-up height budget");
    add_common(construct, common);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << version() << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    auto fmt = [&](const char* fallback) { return common.format.empty() ? std::string(fallback) : common.format; };
    const auto prec = static_cast<mpfr_prec_t>(common.precision);
    try {
        if (plucker->parsed()) {
            const auto d = make_descriptor("plucker", common, {{"basis", basis}, {"file", basis_file}});
            emit(common, cmd_plucker(basis, basis_file, fmt("table"), d), out);
        } else if (bounds->parsed()) {
            std::map<std::string, std::string> p;
            std::string s;
            for (int v : inst) s += std::to_string(v) + " ";
            p["instance"] = s;
            p["table"] = std::to_string(table);
            p["exact"] = common.exact ? "1" : "0";
            emit(common, cmd_bounds(inst, table, common, fmt("table"), make_descriptor("bounds", common, p)), out);
        } else if (enumerate_cmd->parsed()) {
            plan.height_max = parse_hmax(common, true);
            plan.strategy = parse_strategy(strategy);
            plan.work_limit = common.work_limit;
            plan.workers = common.workers;
            const auto d = make_descriptor("enumerate", common,
                                           {{"n", std::to_string(plan.n)},
                                            {"e", std::to_string(plan.e)},
                                            {"strategy", strategy},
                                            {"effort", std::to_string(plan.effort)}});
            try {
                const auto r = enumerate(plan);
                emit(common, {enumeration_body(r, plan, fmt("csv"), d, false), false}, out);
            } catch (const PartialEnumerationError& ex) {
                emit(common, {enumeration_body(ex.progress, plan, fmt("csv"), d, true), true}, out);
                err << "error: " << ex.what() << " after " << ex.work_done << " steps; partial output written\n";
                return kInternal;
            }
        } else if (frontier_cmd->parsed()) {
            std::map<std::string, std::string> p{{"e", std::to_string(fe)},
                                                 {"j", std::to_string(fj)},
                                                 {"strategy", strategy},
                                                 {"effort", std::to_string(plan.effort)}};
            target.record(p);
            const auto d = make_descriptor("frontier", common, p);
            const RealSubspace a = target.build(common.seed, prec);
            plan.n = a.n;
            plan.e = fe;
            plan.height_max = parse_hmax(common, true);
            plan.strategy = parse_strategy(strategy);
            plan.work_limit = common.work_limit;
            plan.workers = common.workers;
            try {
                const auto f = frontier(a, fe, fj, plan);
                emit(common, {frontier_body(f, fmt("csv"), d, false), false}, out);
            } catch (const PartialFrontierError& ex) {
                emit(common, {frontier_body(ex.progress, fmt("csv"), d, true), true}, out);
                err << "error: " << ex.what() << " after " << ex.work_done << " steps; partial output written\n";
                return kInternal;
            }
        } else if (fit_cmd->parsed()) {
            emit(common, cmd_fit(fit_in, fmt("table"), make_descriptor("fit", common, {{"in", fit_in}})), out);
        } else if (construct->parsed()) {
            std::map<std::string, std::string> p{{"kind", co.kind}};
            if (co.kind == "r4") p["xi"] = co.target.xi;
            if (co.kind == "r5") {
                p["zeta3"] = co.target.zeta3;
                p["bound"] = std::to_string(co.bound);
            }
            if (co.kind == "spectrum") {
                p["l"] = std::to_string(co.target.ell);
                p["beta"] = co.target.beta;
                p["N"] = std::to_string(co.target.big_n);
                p["infinite"] = co.infinite ? "1" : "0";
            }
            if (co.kind == "pipeline") {
                p["e"] = std::to_string(co.e);
                p["j"] = std::to_string(co.j);
                p["schedule"] = co.schedule;
                p["budget"] = std::to_string(co.budget);
                co.target.record(p);
            }
            emit(common, cmd_construct(co, common, fmt("csv"), make_descriptor("construct", common, p)), out);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kSuccess;
}

}  // namespace subapprox::cli
