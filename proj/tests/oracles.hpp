// Test-only oracles, independent of the library's implementation paths.
// The distribution CDFs here integrate the density with adaptive Simpson
// quadrature; the library uses the regularized incomplete beta.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v);
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// --- adaptive Simpson quadrature ---

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a,
                                    double b, double eps, double whole, int depth) {
    double c = 0.5 * (a + b);
    double left = simpson(f, a, c);
    double right = simpson(f, c, b);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_impl(f, a, c, eps / 2.0, left, depth - 1) +
           adaptive_simpson_impl(f, c, b, eps / 2.0, right, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-12) {
    if (a >= b) return 0.0;
    return adaptive_simpson_impl(f, a, b, eps, simpson(f, a, b), 40);
}

// --- densities ---

inline double t_density(double x, double df) {
    double ln = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                0.5 * std::log(df * M_PI) -
                (df + 1.0) / 2.0 * std::log1p(x * x / df);
    return std::exp(ln);
}

inline double f_density(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    double ln = 0.5 * (d1 * std::log(d1 * x) + d2 * std::log(d2)) -
                0.5 * (d1 + d2) * std::log(d1 * x + d2) - std::log(x) +
                std::lgamma((d1 + d2) / 2.0) - std::lgamma(d1 / 2.0) -
                std::lgamma(d2 / 2.0);
    return std::exp(ln);
}

// Upper-tail integral over (a, inf) via the substitution x = a + s/(1-s).
inline double upper_tail(const std::function<double(double)>& density, double a) {
    auto transformed = [&](double s) {
        double ds = 1.0 - s;
        double x = a + s / ds;
        return density(x) / (ds * ds);
    };
    return integrate(transformed, 0.0, 1.0 - 1e-9);
}

// Two-sided t-test p-value by quadrature.
inline double t_two_sided_p(double t, double df) {
    if (t == 0.0) return 1.0;
    double tail = upper_tail([df](double x) { return t_density(x, df); }, std::fabs(t));
    return 2.0 * tail;
}

// P(F > f) by quadrature.
inline double f_upper_p(double f, double d1, double d2) {
    if (f <= 0.0) return 1.0;
    return upper_tail([d1, d2](double x) { return f_density(x, d1, d2); }, f);
}

// --- textbook statistics, recomputed directly ---

inline double pooled_t(const std::vector<double>& a, const std::vector<double>& b,
                       double* df_out) {
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double ma = mean(a), mb = mean(b);
    double sa = sample_sd(a), sb = sample_sd(b);
    double pooled_var = ((na - 1) * sa * sa + (nb - 1) * sb * sb) / (na + nb - 2);
    *df_out = na + nb - 2;
    return (ma - mb) / std::sqrt(pooled_var * (1.0 / na + 1.0 / nb));
}

inline double paired_t_stat(const std::vector<double>& a, const std::vector<double>& b,
                            double* df_out) {
    std::vector<double> d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    double md = mean(d);
    double sd = sample_sd(d);
    *df_out = static_cast<double>(a.size() - 1);
    return md / (sd / std::sqrt(static_cast<double>(a.size())));
}

inline double anova_f(const std::vector<std::vector<double>>& groups, double* df1,
                      double* df2) {
    size_t n = 0;
    double total = 0;
    for (const auto& g : groups) {
        n += g.size();
        for (double x : g) total += x;
    }
    double grand = total / static_cast<double>(n);
    double ssb = 0, ssw = 0;
    for (const auto& g : groups) {
        double gm = mean(g);
        ssb += static_cast<double>(g.size()) * (gm - grand) * (gm - grand);
        for (double x : g) ssw += (x - gm) * (x - gm);
    }
    *df1 = static_cast<double>(groups.size() - 1);
    *df2 = static_cast<double>(n - groups.size());
    return (ssb / *df1) / (ssw / *df2);
}

inline double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double sa = sample_sd(a), sb = sample_sd(b);
    double pooled = std::sqrt(((na - 1) * sa * sa + (nb - 1) * sb * sb) / (na + nb - 2));
    return (mean(a) - mean(b)) / pooled;
}

// Deterministic xorshift generator for reproducible fixtures.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return state_;
    }

    double uniform() {  // [0, 1)
        return static_cast<double>(next() >> 11) / 9007199254740992.0;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};

}  // namespace oracle
