#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subapprox/exact.hpp"

namespace subapprox {

struct ProblemInstance {
    int n = 0;
    int d = 0;
    int e = 0;
    int j = 0;

    // Throws ValidationError unless n >= 2, 1 <= d,e <= n-1, d+e <= n, 1 <= j <= min(d,e).
    static ProblemInstance make(int n, int d, int e, int j);
    int t() const { return d < e ? d : e; }
    std::string label() const;

    friend bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
        return a.n == b.n && a.d == b.d && a.e == b.e && a.j == b.j;
    }
};

enum class BoundKind { lower, upper, exact };

// baseline: classical results. refined: the sharper statements the tables print in bold.
enum class Tier { baseline, refined };

struct Contribution {
    std::string tag;  // stable identifier
    BoundKind kind = BoundKind::lower;
    Tier tier = Tier::baseline;
    bool applies = false;
    std::optional<Rat> value;  // set whenever applies
    std::string note;          // hypothesis as checked
};

struct ExponentBounds {
    ProblemInstance instance;
    Rat lower;
    std::optional<Rat> upper;  // nullopt means +infinity
    // Same aggregation restricted to baseline contributions.
    Rat baseline_lower;
    std::optional<Rat> baseline_upper;
    std::vector<Contribution> contributions;
    std::vector<std::string> annotations;

    bool is_exact() const { return upper && *upper == lower; }
};

ExponentBounds known_bounds(const ProblemInstance& inst);

// Lower bound obtained by approximating a direct sum of lines; requires n >= 4.
Rat premiere_borne(const ProblemInstance& inst);

enum class TransferDirection { up, down };
// up: (n-e) mu / (n-e-1), needs e <= n-2. down: e mu / (mu+e-1), needs e >= 2.
Rat laurent_transfer(const Rat& mu, int n, int e, TransferDirection direction);

// 1 + 1/(2l) + sqrt(1 + 1/(4l^2)) written as rational_part + coefficient * sqrt(radicand).
struct SpectrumThreshold {
    int ell = 0;
    Rat rational_part;
    Rat coefficient;
    Int radicand;

    Real value(mpfr_prec_t prec = kDefaultPrecision) const;
    std::string exact_string() const;
};
SpectrumThreshold spectrum_threshold(int ell);

struct TableDocument {
    int n_max = 0;
    std::vector<ExponentBounds> entries;  // ordered by n, e, d, j
};

TableDocument render_tables(int n_max);

std::string format_rational(const Rat& q);
// With exact_only false each rational is followed by its decimal value.
std::string to_csv(const TableDocument& doc, bool exact_only);
std::string to_text(const TableDocument& doc, bool exact_only);
std::string to_json(const ExponentBounds& b);

// Instances (n <= n_max) whose bounds change under d <-> e.
std::vector<ProblemInstance> symmetry_probe(int n_max);

}  // namespace subapprox
