#ifndef LATSPEC_SYMBOL_HPP
#define LATSPEC_SYMBOL_HPP

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "latspec/config.hpp"
#include "latspec/expr.hpp"
#include "latspec/spectra.hpp"

namespace latspec {

// The multiplier family (lambda_n) of a diagonal operator on the atomic
// band, indexed n = 1, 2, ...  Four variants are exact tail models; the
// generator variant is analyzed numerically from samples up to its horizon
// and every quantity derived from it is an estimate.

class AtomicSymbol {
  public:
    struct Finite {
        std::vector<Complex> values;
    };
    struct EventuallyZero {
        std::vector<Complex> prefix;
    };
    /// prefix, then the limit value forever after (the exact tail model of a
    /// convergent family: analytics depend on the tail only through its limit).
    struct ConvergentTail {
        std::vector<Complex> prefix;
        Complex limit;
    };
    struct EventuallyPeriodic {
        std::vector<Complex> prefix;
        std::vector<Complex> period;  // non-empty
    };
    struct Generator {
        expr::Expr formula;  // in the variable n
        long horizon = 0;    // >= 1000
        std::shared_ptr<const std::vector<Complex>> samples;  // n = 1..horizon
    };

    using Variant =
        std::variant<Finite, EventuallyZero, ConvergentTail, EventuallyPeriodic, Generator>;

    static AtomicSymbol finite(std::vector<Complex> values);
    static AtomicSymbol eventually_zero(std::vector<Complex> prefix);
    static AtomicSymbol convergent_tail(std::vector<Complex> prefix, Complex limit);
    static AtomicSymbol eventually_periodic(std::vector<Complex> prefix,
                                            std::vector<Complex> period);

    /// Samples n = 1..horizon at construction.  Throws ValidationError if
    /// horizon < 1000, evaluation fails, or any |lambda_n| is non-finite or
    /// exceeds 1e12 (the boundedness soundness boundary).
    static AtomicSymbol generator(expr::Expr formula, long horizon);

    const Variant& variant() const { return v_; }

    /// False only for the generator variant.
    bool exact() const;

    /// Number of defined entries for the Finite variant, nullopt otherwise.
    std::optional<long> finite_count() const;

    /// lambda_n, 1-based.  Precondition: n >= 1, and n <= count for Finite,
    /// n <= horizon for Generator.
    Complex value_at(long n) const;

    /// Generator sample array (empty span for exact variants).
    std::span<const Complex> samples() const;

  private:
    explicit AtomicSymbol(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// sup_n |lambda_n|.  Exact for exact variants; a max over samples (a lower
/// bound estimate) for generators.
double sup_modulus(const AtomicSymbol& sym);

/// sup_{n > N} |lambda_n|, N >= 0.  Monotone non-increasing in N.
double tail_sup(const AtomicSymbol& sym, long N);

/// Closure of the value set {lambda_n}.  Exact variants give a finite point
/// set; generators give a deduplicated sample cloud plus the estimated
/// cluster points.
SpectralSet values_closure(const AtomicSymbol& sym, const AnalysisConfig& cfg);

/// lambda_n -> alpha * lambda_n (exact per variant; generator samples are
/// remapped and its formula rewritten).
AtomicSymbol scaled(const AtomicSymbol& sym, Complex alpha);

/// lambda_n -> lambda_n + delta.
AtomicSymbol translated(const AtomicSymbol& sym, Complex delta);

}  // namespace latspec

#endif
