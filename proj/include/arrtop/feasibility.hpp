#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "arrtop/rational.hpp"

namespace arrtop {

enum class Relation { equal, greater, greater_equal };

/// coeffs · x  (rel)  rhs
struct LinearConstraint {
    RationalVector coeffs;
    Rational rhs;
    Relation rel = Relation::greater;
};

namespace detail {

struct Inequality {
    RationalVector coeffs;
    Rational rhs;
    bool strict = true;
};

/// Scales so the first nonzero coefficient has absolute value one.
inline void normalize(Inequality& q)
{
    for (const auto& c : q.coeffs)
        if (c != 0) {
            Rational scale = c > 0 ? c : -c;
            for (auto& v : q.coeffs)
                v /= scale;
            q.rhs /= scale;
            return;
        }
}

/// Keeps only the tightest constraint per direction.
inline std::vector<Inequality> deduplicate(std::vector<Inequality> list)
{
    std::map<RationalVector, Inequality> best;
    for (auto& q : list) {
        normalize(q);
        auto it = best.find(q.coeffs);
        if (it == best.end()) {
            best.emplace(q.coeffs, std::move(q));
            continue;
        }
        Inequality& kept = it->second;
        if (q.rhs > kept.rhs || (q.rhs == kept.rhs && q.strict && !kept.strict))
            kept = std::move(q);
    }
    std::vector<Inequality> out;
    out.reserve(best.size());
    for (auto& [key, q] : best)
        out.push_back(std::move(q));
    return out;
}

/// Bounds on x_var once all later variables are fixed and earlier ones are free.
inline Rational pick_between(const std::optional<std::pair<Rational, bool>>& lower,
                             const std::optional<std::pair<Rational, bool>>& upper)
{
    if (lower && upper) {
        if (lower->first == upper->first)
            return lower->first;
        return (lower->first + upper->first) / 2;
    }
    if (lower)
        return lower->first + 1;
    if (upper)
        return upper->first - 1;
    return 0;
}

}  // namespace detail

/**
 * Exact feasibility of a system of linear equalities and (strict or weak)
 * inequalities over the rationals.  Equalities are removed by substitution,
 * the remaining inequalities by Fourier–Motzkin elimination; a witness is
 * rebuilt by back-substitution, choosing midpoints of the admissible
 * intervals.  Returns nullopt when the system is infeasible.
 */
inline std::optional<RationalVector> solve_linear_system(std::size_t dim,
                                                         const std::vector<LinearConstraint>& system)
{
    using detail::Inequality;

    // Substitution records: x_var = (rhs - Σ coeffs_j x_j) / 1, coeffs over the other variables.
    struct Substitution {
        std::size_t var;
        RationalVector coeffs;
        Rational rhs;
    };
    std::vector<Substitution> substitutions;
    std::vector<LinearConstraint> equalities;
    std::vector<Inequality> inequalities;
    for (const auto& c : system) {
        if (c.coeffs.size() != dim)
            throw ConsistencyError("solve_linear_system: constraint has the wrong length");
        if (c.rel == Relation::equal)
            equalities.push_back(c);
        else
            inequalities.push_back({c.coeffs, c.rhs, c.rel == Relation::greater});
    }

    for (std::size_t e = 0; e < equalities.size(); ++e) {
        LinearConstraint eq = equalities[e];
        std::size_t var = dim;
        for (std::size_t j = 0; j < dim; ++j)
            if (eq.coeffs[j] != 0) {
                var = j;
                break;
            }
        if (var == dim) {
            if (eq.rhs != 0)
                return std::nullopt;
            continue;
        }
        Rational pivot = eq.coeffs[var];
        for (auto& v : eq.coeffs)
            v /= pivot;
        eq.rhs /= pivot;
        auto eliminate = [&](RationalVector& coeffs, Rational& rhs) {
            Rational factor = coeffs[var];
            if (factor == 0)
                return;
            for (std::size_t j = 0; j < dim; ++j)
                coeffs[j] -= factor * eq.coeffs[j];
            rhs -= factor * eq.rhs;
        };
        for (std::size_t later = e + 1; later < equalities.size(); ++later)
            eliminate(equalities[later].coeffs, equalities[later].rhs);
        for (auto& q : inequalities)
            eliminate(q.coeffs, q.rhs);
        for (auto& s : substitutions)
            eliminate(s.coeffs, s.rhs);
        eq.coeffs[var] = 0;
        substitutions.push_back({var, eq.coeffs, eq.rhs});
    }

    // Fourier–Motzkin from the last variable down; stages[j] holds the system before eliminating x_j.
    std::vector<std::vector<Inequality>> stages(dim + 1);
    std::vector<Inequality> current = detail::deduplicate(std::move(inequalities));
    for (std::size_t step = dim; step-- > 0;) {
        stages[step] = current;
        std::vector<Inequality> lower, upper, rest;
        for (auto& q : current) {
            if (q.coeffs[step] > 0)
                lower.push_back(q);
            else if (q.coeffs[step] < 0)
                upper.push_back(q);
            else
                rest.push_back(q);
        }
        for (const auto& lo : lower)
            for (const auto& up : upper) {
                // lo: a x_s + A·y > b  (a > 0); up: c x_s + C·y > d  (c < 0)
                Rational a = lo.coeffs[step];
                Rational c = -up.coeffs[step];
                Inequality combined;
                combined.coeffs.resize(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    combined.coeffs[j] = c * lo.coeffs[j] + a * up.coeffs[j];
                combined.coeffs[step] = 0;
                combined.rhs = c * lo.rhs + a * up.rhs;
                combined.strict = lo.strict || up.strict;
                rest.push_back(std::move(combined));
            }
        std::vector<Inequality> constants, remaining;
        for (auto& q : rest) {
            bool zero = true;
            for (const auto& v : q.coeffs)
                if (v != 0) {
                    zero = false;
                    break;
                }
            if (zero) {
                if (q.strict ? !(0 > q.rhs) : !(0 >= q.rhs))
                    return std::nullopt;
            } else {
                remaining.push_back(std::move(q));
            }
        }
        current = detail::deduplicate(std::move(remaining));
    }
    for (const auto& q : current)
        if (q.strict ? !(0 > q.rhs) : !(0 >= q.rhs))
            return std::nullopt;

    RationalVector x(dim, Rational(0));
    std::vector<char> substituted(dim, 0);
    for (const auto& s : substitutions)
        substituted[s.var] = 1;
    for (std::size_t step = 0; step < dim; ++step) {
        if (substituted[step])
            continue;
        std::optional<std::pair<Rational, bool>> lower, upper;
        for (const auto& q : stages[step]) {
            Rational a = q.coeffs[step];
            if (a == 0)
                continue;
            Rational rest = q.rhs;
            for (std::size_t j = 0; j < step; ++j)
                rest -= q.coeffs[j] * x[j];
            Rational bound = rest / a;
            if (a > 0) {
                if (!lower || bound > lower->first || (bound == lower->first && q.strict))
                    lower = {bound, q.strict};
            } else {
                if (!upper || bound < upper->first || (bound == upper->first && q.strict))
                    upper = {bound, q.strict};
            }
        }
        if (lower && upper && (lower->first > upper->first ||
                               (lower->first == upper->first && (lower->second || upper->second))))
            throw ConsistencyError("solve_linear_system: back-substitution found an empty interval");
        x[step] = detail::pick_between(lower, upper);
    }
    for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
        Rational value = it->rhs;
        for (std::size_t j = 0; j < dim; ++j)
            value -= it->coeffs[j] * x[j];
        x[it->var] = value;
    }
    for (const auto& c : system) {
        Rational lhs = dot(c.coeffs, x);
        bool ok = c.rel == Relation::equal     ? lhs == c.rhs
                  : c.rel == Relation::greater ? lhs > c.rhs
                                               : lhs >= c.rhs;
        if (!ok)
            throw ConsistencyError("solve_linear_system: witness fails a constraint");
    }
    return x;
}

}  // namespace arrtop
