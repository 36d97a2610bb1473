#include "convdist/stats.hpp"

#include <algorithm>
#include <cmath>

#include "convdist/errors.hpp"

namespace convdist {

namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

double lanczos_core(double z) {
    // g = 7, n = 9 coefficients
    static const double coef[9] = {
        0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    double x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + i);
    const double t = z + 7.5;
    return kLogSqrtTwoPi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

double log_gamma(double x) {
    if (x < 0.5) {
        // reflection
        const double pi = 3.14159265358979323846;
        return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
    }
    return lanczos_core(x);
}

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 3e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

double gamma_q_cf(double a, double x) {
    // modified Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - log_gamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw config_error("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw config_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double stat, int dof) {
    if (dof < 1) return 1.0;
    if (stat <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * stat);
}

double normal_quantile(double p) {
    // Wichura's algorithm AS 241, PPND16
    if (!(p > 0.0 && p < 1.0))
        throw config_error("normal_quantile: p outside (0,1)");
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r +
                      3.3430575583588128105e+4) *
                         r +
                     6.7265770927008700853e+4) *
                        r +
                    4.5921953931549871457e+4) *
                       r +
                   1.3731693765509461125e+4) *
                      r +
                  1.9715909503065514427e+3) *
                     r +
                 1.3314166789178437745e+2) *
                    r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r +
                      2.8729085735721942674e+4) *
                         r +
                     3.9307895800092710610e+4) *
                        r +
                    2.1213794301586595867e+4) *
                       r +
                   5.3941960214247511077e+3) *
                      r +
                  6.8718700749205790830e+2) *
                     r +
                 4.2313330701600911252e+1) *
                    r +
                1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r +
                     2.27238449892691845833e-2) *
                        r +
                    2.41780725177450611770e-1) *
                       r +
                   1.27045825245236838258e+0) *
                      r +
                  3.64784832476320460504e+0) *
                     r +
                 5.76949722146069140550e+0) *
                    r +
                4.63033784615654529590e+0) *
                   r +
               1.42343711074968357734e+0) /
              (((((((1.05075007164441684324e-9 * r +
                     5.47593808499534494600e-4) *
                        r +
                    1.51986665636164571966e-2) *
                       r +
                   1.48103976427480074590e-1) *
                      r +
                  6.89767334985100004550e-1) *
                     r +
                 1.67638483018380384940e+0) *
                    r +
                2.05319162663775882187e+0) *
                   r +
               1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r +
                     2.71155556874348757815e-5) *
                        r +
                    1.24266094738807843860e-3) *
                       r +
                   2.65321895265761230930e-2) *
                      r +
                  2.96560571828504891230e-1) *
                     r +
                 1.78482653991729133580e+0) *
                    r +
                5.46378491116411436990e+0) *
                   r +
               6.65790464350110377720e+0) /
              (((((((2.04426310338993978564e-15 * r +
                     1.42151175831644588870e-7) *
                        r +
                    1.84631831751005468180e-5) *
                       r +
                   7.86869131145613259100e-4) *
                      r +
                  1.48753612908506148525e-2) *
                     r +
                 1.36929880922735805310e-1) *
                    r +
                5.99832206555887937690e-1) *
                   r +
               1.0);
    }
    return q < 0.0 ? -val : val;
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t trials,
                         double confidence) {
    if (trials == 0) throw config_error("wilson_interval: zero trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double z = normal_quantile(0.5 + confidence / 2.0);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Interval out;
    out.estimate = p;
    out.lo = std::max(0.0, center - half);
    out.hi = std::min(1.0, center + half);
    return out;
}

double poisson_pmf(std::uint64_t k, double lambda) {
    if (lambda < 0.0) throw config_error("poisson_pmf: negative mean");
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    const double kd = static_cast<double>(k);
    return std::exp(kd * std::log(lambda) - lambda - log_gamma(kd + 1.0));
}

double binomial_pmf(std::uint64_t k, std::uint64_t n, double p) {
    if (p < 0.0 || p > 1.0) throw config_error("binomial_pmf: bad p");
    if (k > n) return 0.0;
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    const double lchoose = log_gamma(nd + 1.0) - log_gamma(kd + 1.0) -
                           log_gamma(nd - kd + 1.0);
    return std::exp(lchoose + kd * std::log(p) +
                    (nd - kd) * std::log1p(-p));
}

namespace {

struct PooledBin {
    double observed = 0.0;
    double expected = 0.0;
};

}  // namespace

double chi_square_gof_pvalue(const std::vector<std::uint64_t>& observed,
                             const std::vector<double>& expected_prob,
                             std::uint64_t trials, double min_expected) {
    if (observed.size() != expected_prob.size())
        throw config_error("chi_square_gof: length mismatch");
    std::vector<PooledBin> bins;
    PooledBin cur;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        cur.observed += static_cast<double>(observed[i]);
        cur.expected += expected_prob[i] * static_cast<double>(trials);
        if (cur.expected >= min_expected) {
            bins.push_back(cur);
            cur = PooledBin{};
        }
    }
    if (cur.expected > 0.0 || cur.observed > 0.0) {
        if (!bins.empty()) {
            bins.back().observed += cur.observed;
            bins.back().expected += cur.expected;
        } else {
            bins.push_back(cur);
        }
    }
    if (bins.size() < 2) return 1.0;
    double stat = 0.0;
    for (const auto& b : bins) {
        if (b.expected <= 0.0) continue;
        const double d = b.observed - b.expected;
        stat += d * d / b.expected;
    }
    return chi_square_pvalue(stat, static_cast<int>(bins.size()) - 1);
}

double chi_square_two_sample_pvalue(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b,
                                    double min_expected) {
    if (a.size() != b.size())
        throw config_error("chi_square_two_sample: length mismatch");
    double na = 0.0, nb = 0.0;
    for (auto v : a) na += static_cast<double>(v);
    for (auto v : b) nb += static_cast<double>(v);
    if (na == 0.0 || nb == 0.0)
        throw config_error("chi_square_two_sample: empty sample");

    struct Pair {
        double oa = 0.0, ob = 0.0;
    };
    std::vector<Pair> bins;
    Pair cur;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cur.oa += static_cast<double>(a[i]);
        cur.ob += static_cast<double>(b[i]);
        const double combined = cur.oa + cur.ob;
        if (combined * na / (na + nb) >= min_expected &&
            combined * nb / (na + nb) >= min_expected) {
            bins.push_back(cur);
            cur = Pair{};
        }
    }
    if ((cur.oa > 0.0 || cur.ob > 0.0) && !bins.empty()) {
        bins.back().oa += cur.oa;
        bins.back().ob += cur.ob;
    }
    if (bins.size() < 2) return 1.0;
    double stat = 0.0;
    for (const auto& bin : bins) {
        const double tot = bin.oa + bin.ob;
        const double ea = tot * na / (na + nb);
        const double eb = tot * nb / (na + nb);
        if (ea <= 0.0 || eb <= 0.0) continue;
        stat += (bin.oa - ea) * (bin.oa - ea) / ea +
                (bin.ob - eb) * (bin.ob - eb) / eb;
    }
    return chi_square_pvalue(stat, static_cast<int>(bins.size()) - 1);
}

double tv_distance(const std::vector<std::uint64_t>& counts,
                   std::uint64_t trials, const std::vector<double>& ref_pmf) {
    if (trials == 0) throw config_error("tv_distance: zero trials");
    const std::size_t len = std::max(counts.size(), ref_pmf.size());
    double sum = 0.0;
    double ref_mass = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double c =
            i < counts.size()
                ? static_cast<double>(counts[i]) / static_cast<double>(trials)
                : 0.0;
        const double p = i < ref_pmf.size() ? ref_pmf[i] : 0.0;
        ref_mass += p;
        sum += std::abs(c - p);
    }
    sum += std::max(0.0, 1.0 - ref_mass);  // reference mass beyond the table
    return 0.5 * sum;
}

double pearson_correlation(const std::vector<double>& x,
                           const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw config_error("pearson_correlation: bad input");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace convdist
