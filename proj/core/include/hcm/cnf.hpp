#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hcm {

/// A literal in DIMACS convention: +v is x_v, -v is its negation, v >= 1.
using Literal = int;
using Clause = std::vector<Literal>;

/// k-CNF formula. No clause mentions a variable twice; every clause is
/// non-empty. Variables are 1..num_vars in the DIMACS encoding.
class CnfFormula {
public:
    CnfFormula() = default;
    /// Validates; throws PreconditionError on empty, tautological or
    /// duplicate-literal clauses and out-of-range variables.
    CnfFormula(int num_vars, std::vector<Clause> clauses);

    auto num_vars() const noexcept -> int { return num_vars_; }
    auto clauses() const noexcept -> const std::vector<Clause>& { return clauses_; }
    auto num_clauses() const noexcept -> std::size_t { return clauses_.size(); }
    /// Maximum clause width (0 for the empty formula).
    auto width() const noexcept -> int { return width_; }

    /// True iff every clause has a literal made true by the assignment
    /// (indexed by variable-1).
    auto satisfied_by(const std::vector<bool>& assignment) const -> bool;

private:
    int num_vars_ = 0;
    int width_ = 0;
    std::vector<Clause> clauses_;
};

/// DIMACS CNF reader. When max_width is set, wider clauses are rejected.
auto parse_dimacs_cnf(std::string_view text, std::optional<int> max_width = std::nullopt) -> CnfFormula;
auto parse_dimacs_cnf(std::istream& in, std::optional<int> max_width = std::nullopt) -> CnfFormula;
auto to_dimacs(const CnfFormula& phi) -> std::string;

/// Uniform random k-CNF with m distinct clauses over distinct variables.
auto random_kcnf(int n, int m, int k, std::uint64_t seed) -> CnfFormula;
/// Random k-CNF whose clauses all agree with a hidden assignment, returned
/// through `planted` when non-null.
auto planted_kcnf(int n, int m, int k, std::uint64_t seed, std::vector<bool>* planted = nullptr) -> CnfFormula;
/// A sparse random k-CNF on n variables plus a block of `block` fresh
/// variables carrying every satisfiable-by-all-true k-clause on them: the
/// density sits on a vanishing fraction of the literals.
auto planted_block_kcnf(int n, int sparse_clauses, int block, int k, std::uint64_t seed) -> CnfFormula;

} // namespace hcm
