#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamlab/combinatorics.hpp"
#include "hamlab/hypergraph.hpp"

namespace hamlab {

/// Extremal spec with A = {0, ..., a-1}.
auto prefix_spec(int n, int k, int a, int eta) -> ExtremalSpec;

/// Implicit hypergraph for the spec; materialize() gives the explicit form.
auto build_extremal(const ExtremalSpec& spec) -> Hypergraph;

/// |S ∩ A| mod 2.
auto eta_set(const ExtremalSpec& spec, const VertexSet& s) -> int;

struct ParityValue {
    int f = 0;
    bool in_hext = false;  ///< f == 1: the spec belongs to the extremal family
};

/// f = (eta * n/k + |A|) mod 2. Requires k | n.
auto f_parity(const ExtremalSpec& spec) -> ParityValue;

/// Membership in the extremal family straight from its definition: the odd
/// family when n/k - |A| is odd, the even family when |A| is odd.
auto in_extremal_family(int n, int k, int a, int eta) -> bool;

/// Every admissible (a, eta) of the extremal family, as prefix specs.
auto extremal_family(int n, int k) -> std::vector<ExtremalSpec>;

/// Closed-form minimum ell-degree of the extremal graph with |A| = a.
auto delta_ell_extremal(int a, int n, int k, int ell, int eta) -> std::int64_t;

enum class ThresholdMethod { formula, enumeration };

auto method_name(ThresholdMethod m) -> std::string;

/// Thrown when the codegree formula's case split depends on the parity of
/// (n-1)/2 but n is even, so the case is not defined.
class IllDefinedCase : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

struct ThresholdReport {
    int n = 0;
    int k = 0;
    int ell = 0;
    Rational value;
    std::vector<std::pair<int, int>> argmax;  ///< (|A|, eta), smaller a first, eta = 1 before eta = 0
    ThresholdMethod method = ThresholdMethod::enumeration;
    std::string formula_case;  ///< which branch of the codegree formula applied (formula mode)
};

/// Max of δ_ℓ over the extremal family. Formula mode supports ℓ = k-1 only.
auto delta_threshold(int n, int k, int ell, ThresholdMethod method, int threads = 1) -> ThresholdReport;

/// Branch label and value of the piecewise codegree formula; throws IllDefinedCase.
auto codegree_formula(int n, int k) -> std::pair<std::string, Rational>;

}  // namespace hamlab
