#include "hcm/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <set>
#include <sstream>

#include "hcm/errors.hpp"
#include "hcm/random.hpp"

namespace hcm {

CnfFormula::CnfFormula(int num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses))
{
    if (num_vars < 0)
        throw PreconditionError("negative variable count");
    for (const auto& c : clauses_) {
        if (c.empty())
            throw PreconditionError("empty clause");
        std::vector<int> vars;
        for (Literal l : c) {
            if (l == 0 || std::abs(l) > num_vars)
                throw PreconditionError("literal " + std::to_string(l) + " out of range");
            vars.push_back(std::abs(l));
        }
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
            bool tautology = false;
            for (Literal l : c)
                tautology = tautology || std::find(c.begin(), c.end(), -l) != c.end();
            throw PreconditionError(tautology ? "tautological clause" : "clause repeats a literal");
        }
        width_ = std::max(width_, static_cast<int>(c.size()));
    }
}

auto CnfFormula::satisfied_by(const std::vector<bool>& assignment) const -> bool
{
    return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) {
        return std::any_of(c.begin(), c.end(), [&](Literal l) {
            return assignment[static_cast<std::size_t>(std::abs(l) - 1)] == (l > 0);
        });
    });
}

auto parse_dimacs_cnf(std::istream& in, std::optional<int> max_width) -> CnfFormula
{
    std::string raw;
    std::size_t line_no = 0;
    long long n = -1;
    long long declared_m = -1;
    std::vector<Clause> clauses;
    Clause current;
    std::size_t clause_start = 0;

    auto finish = [&](std::size_t line) {
        if (current.empty())
            throw ParseError(line, "empty clause");
        for (Literal l : current)
            if (std::find(current.begin(), current.end(), -l) != current.end())
                throw ParseError(line, "tautological clause");
        std::vector<Literal> sorted = current;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError(line, "clause repeats a literal");
        if (max_width && static_cast<int>(current.size()) > *max_width)
            throw ParseError(line, "clause width " + std::to_string(current.size()) + " exceeds k=" + std::to_string(*max_width));
        clauses.push_back(std::move(current));
        current.clear();
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::string tok;
        if (!(ls >> tok) || tok == "c")
            continue;
        if (tok == "%")
            break;
        if (tok == "p") {
            std::string format, ns, ms, extra;
            if (n >= 0)
                throw ParseError(line_no, "second problem line");
            if (!(ls >> format >> ns >> ms) || (ls >> extra) || format != "cnf")
                throw ParseError(line_no, "malformed header, expected 'p cnf <n> <m>'");
            try {
                std::size_t a = 0, b = 0;
                n = std::stoll(ns, &a);
                declared_m = std::stoll(ms, &b);
                if (a != ns.size() || b != ms.size() || n < 0 || declared_m < 0)
                    throw std::invalid_argument("bad");
            } catch (const std::logic_error&) {
                throw ParseError(line_no, "malformed header counts");
            }
            continue;
        }
        if (n < 0)
            throw ParseError(line_no, "clause before header");
        do {
            long long lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stoll(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument("bad");
            } catch (const std::logic_error&) {
                throw ParseError(line_no, "malformed literal '" + tok + "'");
            }
            if (lit == 0) {
                finish(clause_start);
                continue;
            }
            if (std::llabs(lit) > n)
                throw ParseError(line_no, "literal " + tok + " out of range");
            if (current.empty())
                clause_start = line_no;
            current.push_back(static_cast<Literal>(lit));
        } while (ls >> tok);
    }
    if (n < 0)
        throw ParseError(line_no, "missing 'p cnf' header");
    if (!current.empty())
        throw ParseError(line_no, "unterminated clause");
    if (static_cast<long long>(clauses.size()) != declared_m)
        throw ParseError(line_no, "header declares " + std::to_string(declared_m) + " clauses, found " + std::to_string(clauses.size()));
    return CnfFormula(static_cast<int>(n), std::move(clauses));
}

auto parse_dimacs_cnf(std::string_view text, std::optional<int> max_width) -> CnfFormula
{
    std::istringstream in{std::string(text)};
    return parse_dimacs_cnf(in, max_width);
}

auto to_dimacs(const CnfFormula& phi) -> std::string
{
    std::ostringstream out;
    out << "p cnf " << phi.num_vars() << ' ' << phi.num_clauses() << '\n';
    for (const auto& c : phi.clauses()) {
        for (Literal l : c)
            out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

namespace {

auto random_clause(Rng& rng, int n, int k) -> Clause
{
    Clause c;
    while (static_cast<int>(c.size()) < k) {
        int v = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
        if (std::none_of(c.begin(), c.end(), [&](Literal l) { return std::abs(l) == v; }))
            c.push_back((rng() & 1U) ? v : -v);
    }
    std::sort(c.begin(), c.end(), [](Literal a, Literal b) { return std::abs(a) < std::abs(b); });
    return c;
}

auto max_distinct_clauses(int n, int k) -> double
{
    double count = 1;
    for (int i = 0; i < k; ++i)
        count = count * (n - i) / (i + 1);
    return count * static_cast<double>(1ULL << k);
}

} // namespace

auto random_kcnf(int n, int m, int k, std::uint64_t seed) -> CnfFormula
{
    if (k < 1 || k > n)
        throw ParameterError("random_kcnf needs 1 <= k <= n");
    const auto target = static_cast<std::size_t>(std::min<double>(m, max_distinct_clauses(n, k)));
    Rng rng(seed);
    std::set<Clause> seen;
    std::vector<Clause> clauses;
    while (clauses.size() < target) {
        Clause c = random_clause(rng, n, k);
        if (seen.insert(c).second)
            clauses.push_back(std::move(c));
    }
    return CnfFormula(n, std::move(clauses));
}

auto planted_kcnf(int n, int m, int k, std::uint64_t seed, std::vector<bool>* planted) -> CnfFormula
{
    if (k < 1 || k > n)
        throw ParameterError("planted_kcnf needs 1 <= k <= n");
    Rng rng(seed);
    std::vector<bool> hidden(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        hidden[static_cast<std::size_t>(i)] = (rng() & 1U) != 0;
    // Each clause forbids one of 2^k sign patterns; only the planted one is excluded.
    const double available = max_distinct_clauses(n, k) * (1.0 - 1.0 / static_cast<double>(1ULL << k));
    const auto target = static_cast<std::size_t>(std::min<double>(m, available));
    std::set<Clause> seen;
    std::vector<Clause> clauses;
    while (clauses.size() < target) {
        Clause c = random_clause(rng, n, k);
        bool sat = std::any_of(c.begin(), c.end(), [&](Literal l) {
            return hidden[static_cast<std::size_t>(std::abs(l) - 1)] == (l > 0);
        });
        if (sat && seen.insert(c).second)
            clauses.push_back(std::move(c));
    }
    if (planted)
        *planted = hidden;
    return CnfFormula(n, std::move(clauses));
}

auto planted_block_kcnf(int n, int sparse_clauses, int block, int k, std::uint64_t seed) -> CnfFormula
{
    if (block < k)
        throw ParameterError("block must hold at least k variables");
    CnfFormula base = random_kcnf(n, sparse_clauses, k, seed);
    std::vector<Clause> clauses = base.clauses();
    // Every k-subset of the block, every sign pattern except all-negative.
    std::vector<bool> pick(static_cast<std::size_t>(block), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<int> vars;
        for (int i = 0; i < block; ++i)
            if (pick[static_cast<std::size_t>(i)])
                vars.push_back(n + 1 + i);
        for (unsigned signs = 1; signs < (1U << k); ++signs) {
            Clause c;
            for (int j = 0; j < k; ++j)
                c.push_back(((signs >> j) & 1U) ? vars[static_cast<std::size_t>(j)] : -vars[static_cast<std::size_t>(j)]);
            clauses.push_back(std::move(c));
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return CnfFormula(n + block, std::move(clauses));
}

} // namespace hcm
