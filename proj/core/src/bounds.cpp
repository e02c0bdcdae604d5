#include "subapprox/bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace subapprox {

namespace {

Rat frac(long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

Int ceil_div(const Int& p, const Int& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    return r;
}

Contribution make(std::string tag, BoundKind kind, Tier tier, bool applies, std::optional<Rat> value,
                  std::string note) {
    Contribution c;
    c.tag = std::move(tag);
    c.kind = kind;
    c.tier = tier;
    c.applies = applies;
    if (applies) c.value = std::move(value);
    c.note = std::move(note);
    return c;
}

std::string decimal(const Rat& q) {
    std::ostringstream os;
    os << std::setprecision(6) << q.get_d();
    return os.str();
}

void aggregate(const std::vector<Contribution>& cs, bool baseline_only, Rat& lower, std::optional<Rat>& upper) {
    lower = 0;
    upper.reset();
    for (const auto& c : cs) {
        if (!c.applies || (baseline_only && c.tier != Tier::baseline)) continue;
        if (c.kind != BoundKind::upper) lower = std::max(lower, *c.value);
        if (c.kind != BoundKind::lower && (!upper || *c.value < *upper)) upper = *c.value;
    }
}

}  // namespace

ProblemInstance ProblemInstance::make(int n, int d, int e, int j) {
    if (n < 2) throw ValidationError("instance: n must be at least 2");
    if (d < 1 || d > n - 1 || e < 1 || e > n - 1) throw ValidationError("instance: d and e must lie in 1..n-1");
    if (d + e > n) throw ValidationError("instance: d + e must not exceed n");
    if (j < 1 || j > std::min(d, e)) throw ValidationError("instance: j must lie in 1..min(d,e)");
    return ProblemInstance{n, d, e, j};
}

std::string ProblemInstance::label() const {
    std::ostringstream os;
    os << "(" << n << "," << d << "," << e << "," << j << ")";
    return os.str();
}

Rat premiere_borne(const ProblemInstance& inst) {
    const long n = inst.n, d = inst.d, e = inst.e, j = inst.j;
    if (n < 4) throw ValidationError("premiere_borne: needs n >= 4");
    // Numerator and denominator doubled to clear the halves.
    const long num = (n - j) * (2 * j * n - 2 * j * d + j * j + j + 2);
    const long den = j * j * (n - e) * (2 * n - 2 * d + j + 1);
    return frac(num, den);
}

ExponentBounds known_bounds(const ProblemInstance& inst) {
    const long n = inst.n, d = inst.d, e = inst.e, j = inst.j, t = inst.t();
    std::vector<Contribution> cs;
    const auto L = BoundKind::lower;
    const auto U = BoundKind::upper;
    const auto X = BoundKind::exact;
    const auto base = Tier::baseline;
    const auto ref = Tier::refined;

    cs.push_back(make("schmidt_lower", L, base, true, frac(d * (n - j), j * (n - d) * (n - e)), "all instances"));
    cs.push_back(make("schmidt_lower_j1", L, base, j == 1, frac(n * (n - 1), (n - d) * (n - e)), "j = 1"));
    {
        const bool ok = j + n - t >= j * (j + n - d - e);
        cs.push_back(make("schmidt_conditional", L, base, ok, frac(j + n - t, j * (j + n - d - e)),
                          "j+n-t >= j(j+n-d-e)"));
    }
    {
        const bool ok = j == t && n >= t * (t + n - d - e);
        cs.push_back(make("schmidt_equality", X, base, ok, frac(n, t * (t + n - d - e)), "j = t and n >= t(t+n-d-e)"));
    }
    cs.push_back(make("schmidt_upper", U, base, true,
                      Rat(ceil_div(Int(e * (n - e) + 1), Int(n + 1 - d - e))) / Rat(j), "all instances"));
    cs.push_back(make("moshchevitin_2d", U, base, d == e && j == 1 && n == 2 * d && d >= 2, Rat(2 * d),
                      "d = e, j = 1, n = 2d"));
    cs.push_back(make("saxce_upper", U, base, d == e && e == j, frac(n, d * (n - d)), "d = e = j"));

    cs.push_back(make("inclusion_2d", U, ref, d == e && j == 1 && n > 2 * d && d >= 2, Rat(2 * d),
                      "d = e >= 2, j = 1, n > 2d"));
    cs.push_back(make("moshchevitin_2d2", U, ref, e == d - 1 && j == 1 && d >= 2 && n >= 2 * d,
                      frac(2 * d * d, d + 1), "e = d-1, j = 1, d >= 2, n >= 2d"));
    cs.push_back(make("r4_exact", X, ref, n == 4 && d == 2 && e == 2 && j == 1, Rat(3), "(4,2,2,1)"));
    cs.push_back(make("r5_upper", U, ref, n == 5 && d == 3 && e == 2 && j == 1, Rat(6), "(5,3,2,1)"));
    cs.push_back(make("inclusion_5221", U, ref, n == 5 && d == 2 && e == 2 && j == 1, Rat(3), "(5,2,2,1)"));
    cs.push_back(make("direct_sum_lower", L, ref, n >= 4, n >= 4 ? std::optional<Rat>(premiere_borne(inst)) : std::nullopt,
                      "n >= 4"));

    ExponentBounds b;
    b.instance = inst;
    b.contributions = std::move(cs);
    aggregate(b.contributions, false, b.lower, b.upper);
    aggregate(b.contributions, true, b.baseline_lower, b.baseline_upper);
    if (j == e) b.annotations.push_back("conjectured value n/(e(n-d)) = " + format_rational(frac(n, e * (n - d))));
    return b;
}

Rat laurent_transfer(const Rat& mu, int n, int e, TransferDirection direction) {
    if (direction == TransferDirection::up) {
        if (e < 1 || e > n - 2) throw ValidationError("laurent_transfer: up needs 1 <= e <= n-2");
        return Rat(n - e) * mu / Rat(n - e - 1);
    }
    if (e < 2 || e > n - 1) throw ValidationError("laurent_transfer: down needs 2 <= e <= n-1");
    if (mu <= 0) throw ValidationError("laurent_transfer: mu must be positive");
    return Rat(e) * mu / (mu + Rat(e - 1));
}

SpectrumThreshold spectrum_threshold(int ell) {
    if (ell < 1) throw ValidationError("spectrum_threshold: needs l >= 1");
    SpectrumThreshold s;
    s.ell = ell;
    s.rational_part = frac(2L * ell + 1, 2L * ell);
    s.coefficient = frac(1, 2L * ell);
    s.radicand = Int(4L * ell * ell + 1);
    return s;
}

Real SpectrumThreshold::value(mpfr_prec_t prec) const {
    return Real(rational_part, prec) + Real(coefficient, prec) * sqrt(Real(radicand, prec));
}

std::string SpectrumThreshold::exact_string() const {
    return format_rational(rational_part) + " + " + format_rational(coefficient) + "*sqrt(" + radicand.get_str() + ")";
}

TableDocument render_tables(int n_max) {
    if (n_max < 2 || n_max > 6) throw ValidationError("render_tables: n_max must lie in 2..6");
    TableDocument doc;
    doc.n_max = n_max;
    for (int n = 2; n <= n_max; ++n)
        for (int e = 1; e < n; ++e)
            for (int d = 1; d + e <= n; ++d)
                for (int j = 1; j <= std::min(d, e); ++j) doc.entries.push_back(known_bounds(ProblemInstance::make(n, d, e, j)));
    return doc;
}

std::string format_rational(const Rat& q) { return q.get_str(); }

namespace {

std::string cell(const std::optional<Rat>& q, bool exact_only) {
    if (!q) return "inf";
    if (exact_only) return format_rational(*q);
    return format_rational(*q) + " (" + decimal(*q) + ")";
}

std::string interval(const Rat& lo, const std::optional<Rat>& hi, bool exact_only) {
    if (hi && *hi == lo) return "= " + cell(lo, exact_only);
    return "in [" + cell(lo, exact_only) + ", " + cell(hi, exact_only) + "]";
}

}  // namespace

std::string to_csv(const TableDocument& doc, bool exact_only) {
    std::ostringstream os;
    os << "n,d,e,j,lower,upper,baseline_lower,baseline_upper";
    if (!exact_only) os << ",lower_decimal,upper_decimal";
    os << ",tags\n";
    for (const auto& b : doc.entries) {
        const auto& p = b.instance;
        os << p.n << ',' << p.d << ',' << p.e << ',' << p.j << ',' << format_rational(b.lower) << ','
           << (b.upper ? format_rational(*b.upper) : "inf") << ',' << format_rational(b.baseline_lower) << ','
           << (b.baseline_upper ? format_rational(*b.baseline_upper) : "inf");
        if (!exact_only) os << ',' << decimal(b.lower) << ',' << (b.upper ? decimal(*b.upper) : "inf");
        os << ',';
        bool first = true;
        for (const auto& c : b.contributions) {
            if (!c.applies) continue;
            if (!first) os << ';';
            os << c.tag;
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

std::string to_text(const TableDocument& doc, bool exact_only) {
    std::ostringstream os;
    for (int n = 2; n <= doc.n_max; ++n) {
        // cells[e][d] holds the lines of one grid cell
        std::map<int, std::map<int, std::vector<std::string>>> cells;
        for (const auto& b : doc.entries) {
            const auto& p = b.instance;
            if (p.n != n) continue;
            const std::string name = "mu" + p.label();
            auto& lines = cells[p.e][p.d];
            lines.push_back(name + " " + interval(b.baseline_lower, b.baseline_upper, exact_only));
            if (b.lower != b.baseline_lower || b.upper != b.baseline_upper)
                lines.push_back("* " + name + " " + interval(b.lower, b.upper, exact_only));
        }
        std::vector<std::size_t> width(static_cast<std::size_t>(n), 0);
        for (const auto& [e, row] : cells)
            for (const auto& [d, lines] : row)
                for (const auto& l : lines) width[static_cast<std::size_t>(d)] = std::max(width[static_cast<std::size_t>(d)], l.size());
        os << "R^" << n << "\n";
        for (int e = 1; e < n; ++e) {
            std::size_t height = 1;
            for (const auto& [d, lines] : cells[e]) height = std::max(height, lines.size());
            for (std::size_t k = 0; k < height; ++k) {
                os << (k == 0 ? "dim B=" + std::to_string(e) : std::string(7, ' ')) << " |";
                for (int d = 1; d < n; ++d) {
                    std::string s;
                    if (d + e > n)
                        s = k == 0 ? "*" : "";
                    else if (k < cells[e][d].size())
                        s = cells[e][d][k];
                    const std::size_t w = std::max<std::size_t>(width[static_cast<std::size_t>(d)], 1);
                    os << ' ' << s << std::string(w - s.size(), ' ') << " |";
                }
                os << "\n";
            }
        }
        os << "\n";
    }
    return os.str();
}

std::string to_json(const ExponentBounds& b) {
    nlohmann::ordered_json j;
    const auto& p = b.instance;
    j["n"] = p.n;
    j["d"] = p.d;
    j["e"] = p.e;
    j["j"] = p.j;
    j["lower"] = format_rational(b.lower);
    j["upper"] = b.upper ? format_rational(*b.upper) : "inf";
    j["baseline_lower"] = format_rational(b.baseline_lower);
    j["baseline_upper"] = b.baseline_upper ? format_rational(*b.baseline_upper) : "inf";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : b.contributions) {
        nlohmann::ordered_json cj;
        cj["tag"] = c.tag;
        cj["kind"] = c.kind == BoundKind::lower ? "lower" : c.kind == BoundKind::upper ? "upper" : "exact";
        cj["tier"] = c.tier == Tier::baseline ? "baseline" : "refined";
        cj["applies"] = c.applies;
        if (c.value) cj["value"] = format_rational(*c.value);
        cj["hypothesis"] = c.note;
        arr.push_back(cj);
    }
    j["contributions"] = arr;
    j["annotations"] = b.annotations;
    return j.dump();
}

std::vector<ProblemInstance> symmetry_probe(int n_max) {
    std::vector<ProblemInstance> out;
    for (int n = 2; n <= n_max; ++n)
        for (int d = 1; d < n; ++d)
            for (int e = d + 1; d + e <= n; ++e)
                for (int j = 1; j <= d; ++j) {
                    const auto a = known_bounds(ProblemInstance::make(n, d, e, j));
                    const auto b = known_bounds(ProblemInstance::make(n, e, d, j));
                    if (a.lower != b.lower || a.upper != b.upper) out.push_back(a.instance);
                }
    return out;
}

}  // namespace subapprox
