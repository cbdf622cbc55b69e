#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "spdc/errors.hpp"
#include "spdc/optics.hpp"

namespace spdc {

struct QuadratureSpec {
    int radial_points = 128;
    int azimuthal_points = 256;
    double rel_tol = 1e-2;
    int max_doublings = 2;

    void validate() const;
    QuadratureSpec doubled() const;
    bool operator==(const QuadratureSpec&) const = default;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // |last - previous| of the doubling sequence
    int doublings = 0;
    bool converged = false;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

// Nodes and weights of the rule mapped onto [a, b].
GaussLegendreRule gauss_legendre(int n, double a, double b);

// Neumaier summation.
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class NonFiniteSample : public DomainError {
public:
    NonFiniteSample(double r, double phi)
        : DomainError("non-finite integrand at r = " + std::to_string(r) + ", phi = " + std::to_string(phi)), r_(r),
          phi_(phi)
    {
    }
    double r() const { return r_; }
    double phi() const { return phi_; }

private:
    double r_;
    double phi_;
};

// Trapezoid rule with n points on one period starting at phi0.
template <class F>
double periodic_trapezoid(F&& f, int n, double phi0 = 0.0)
{
    if (n < 1) {
        throw DomainError("periodic_trapezoid: need at least one point");
    }
    CompensatedSum s;
    const double h = kTwoPi / n;
    for (int j = 0; j < n; ++j) {
        const double phi = phi0 + h * j;
        const double v = f(phi);
        if (!std::isfinite(v)) {
            throw NonFiniteSample(0.0, phi);
        }
        s.add(v);
    }
    return h * s.value();
}

// Trapezoid rule with n and 2n points; error is the difference of the two.
template <class F>
QuadratureResult integrate_periodic(F&& f, int n)
{
    QuadratureResult res;
    const double coarse = periodic_trapezoid(f, n);
    res.value = periodic_trapezoid(f, 2 * n);
    res.error = std::abs(res.value - coarse);
    res.doublings = 1;
    res.converged = true;
    return res;
}

namespace detail {

inline bool close_enough(double fine, double coarse, double rel_tol)
{
    return std::abs(fine - coarse) <= rel_tol * std::abs(fine);
}

template <class F>
double annulus_sum(F& f, double r_min, double r_max, int nr, int nphi)
{
    const GaussLegendreRule rule = gauss_legendre(nr, r_min, r_max);
    const double h = kTwoPi / nphi;
    CompensatedSum s;
    for (int i = 0; i < nr; ++i) {
        const double r = rule.nodes[i];
        CompensatedSum ring;
        for (int j = 0; j < nphi; ++j) {
            const double phi = h * j;
            const double v = f(r, phi);
            if (!std::isfinite(v)) {
                throw NonFiniteSample(r, phi);
            }
            ring.add(v);
        }
        s.add(rule.weights[i] * r * h * ring.value());
    }
    return s.value();
}

}  // namespace detail

// Integral of f(r, phi) r dr dphi over r_min <= r <= r_max with Gauss-Legendre
// in r and the trapezoid rule in phi, doubling both counts until two successive
// estimates agree to rel_tol.
template <class F>
QuadratureResult integrate_annulus(F&& f, double r_min, double r_max, const QuadratureSpec& spec)
{
    spec.validate();
    if (!(r_max > r_min) || r_min < 0.0) {
        throw DomainError("integrate_annulus: need 0 <= r_min < r_max");
    }
    QuadratureResult res;
    int nr = spec.radial_points;
    int nphi = spec.azimuthal_points;
    double prev = detail::annulus_sum(f, r_min, r_max, nr, nphi);
    res.value = prev;
    for (int k = 1; k <= spec.max_doublings; ++k) {
        nr *= 2;
        nphi *= 2;
        const double cur = detail::annulus_sum(f, r_min, r_max, nr, nphi);
        res.value = cur;
        res.error = std::abs(cur - prev);
        res.doublings = k;
        if (detail::close_enough(cur, prev, spec.rel_tol)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

template <class T>
struct CellOutcome {
    T value{};
    bool ok = true;
    std::string error;
};

// Worker count from SPDC_WORKERS, else the hardware concurrency.
unsigned worker_count();

// Evaluates fn(i) for i in [0, n). Every cell is computed by the same code
// regardless of which thread picks it up, so the output does not depend on
// the number of workers. Exceptions are captured per cell.
template <class Fn>
auto parallel_cell_map(std::size_t n, unsigned workers, Fn&& fn)
    -> std::vector<CellOutcome<std::invoke_result_t<Fn&, std::size_t>>>
{
    using T = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<CellOutcome<T>> out(n);
    constexpr std::size_t chunk = 16;
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t start = next.fetch_add(chunk);
            if (start >= n) {
                return;
            }
            const std::size_t stop = std::min(n, start + chunk);
            for (std::size_t i = start; i < stop; ++i) {
                try {
                    out[i].value = fn(i);
                } catch (const std::exception& e) {
                    out[i].ok = false;
                    out[i].error = e.what();
                }
            }
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1 || n <= chunk) {
        run();
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) {
        pool.emplace_back(run);
    }
    run();
    for (auto& th : pool) {
        th.join();
    }
    return out;
}

}  // namespace spdc
