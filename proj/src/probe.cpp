#include "reliab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "reliab/errors.hpp"
#include "reliab/quadrature.hpp"
#include "reliab/special.hpp"

namespace reliab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogBetaFloor = -30.0;  // lower end of the log-beta domain
constexpr double kWCap = 35.0;           // mu = mu_hi(1 - e^{-w}), w in (0, kWCap]

double log_sum_exp(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// Row times shifted by mu_hi so that the shifted location a = dx + mu_off
// never suffers cancellation as mu approaches mu_hi.
struct ProbeRows {
    std::vector<double> dx_exact;
    std::vector<double> dx_right;
    std::vector<std::pair<double, double>> dx_general;  // (l, u) - mu_hi, u finite
    double mu_hi = kInf;
};

ProbeRows split_rows(const ComponentDataset& data) {
    if (data.rows.empty()) throw DataError("probe needs a nonempty dataset");
    double mu_hi = kInf;
    for (const auto& obs : data.rows) {
        if (obs.lower > 0.0) mu_hi = std::min(mu_hi, obs.lower);
        if (obs.upper < kInf) mu_hi = std::min(mu_hi, obs.upper);
    }
    if (!(mu_hi > 0.0) || mu_hi == kInf)
        throw DataError("probe needs a positive finite observation bound");
    ProbeRows rows;
    rows.mu_hi = mu_hi;
    for (const auto& obs : data.rows) {
        switch (kind_of(obs)) {
            case ObsKind::exact: rows.dx_exact.push_back(obs.lower - mu_hi); break;
            case ObsKind::right_censored:
                rows.dx_right.push_back(obs.lower - mu_hi);
                break;
            default:
                rows.dx_general.emplace_back(obs.lower - mu_hi, obs.upper - mu_hi);
                break;
        }
    }
    return rows;
}

// ln S with S = sum of (x - mu)^beta over exact rows and positive-shift
// right-censored rows. -infinity when the sum is empty.
double log_hazard_sum(const ProbeRows& rows, double beta, double mu_off) {
    std::vector<double> terms;
    terms.reserve(rows.dx_exact.size() + rows.dx_right.size());
    for (double dx : rows.dx_exact) terms.push_back(beta * std::log(dx + mu_off));
    for (double dx : rows.dx_right) {
        const double a = dx + mu_off;
        if (a > 0.0) terms.push_back(beta * std::log(a));
    }
    return log_sum_exp(terms);
}

// ln of the eta integral of prior * likelihood at fixed (beta, mu) when all
// rows are exact or right-censored: the substitution q = S/eta^beta turns it
// into an upper incomplete gamma.
double log_inner_closed(const ProbeRows& rows, double prior_b, double beta,
                        double mu_off, double cap) {
    const double n_f = static_cast<double>(rows.dx_exact.size());
    double sum_ln_a = 0.0;
    for (double dx : rows.dx_exact) sum_ln_a += std::log(dx + mu_off);
    const double ln_s = log_hazard_sum(rows, beta, mu_off);
    const double ln_vmin = ln_s - beta * std::log(cap);
    const double q = ln_vmin > 700.0
                         ? 0.0
                         : reg_gamma_upper(n_f, std::exp(ln_vmin));
    return (n_f - prior_b - 1.0) * std::log(beta) + (beta - 1.0) * sum_ln_a -
           n_f * ln_s + std::lgamma(n_f) + std::log(q);
}

// log of one left/interval row's probability mass at the given log-scale,
// organized so astronomically large hazards degrade to -infinity instead of
// NaN.
double log_general_mass(double dl, double du, double mu_off, double beta,
                        double ln_eta) {
    const double al = dl + mu_off;
    const double ln_hl = al > 0.0 ? beta * (std::log(al) - ln_eta) : kNegInf;
    if (ln_hl > 700.0) return kNegInf;
    const double ln_hu = beta * (std::log(du + mu_off) - ln_eta);
    const double hl = ln_hl == kNegInf ? 0.0 : std::exp(ln_hl);
    const double hu = ln_hu > 700.0 ? kInf : std::exp(ln_hu);
    const double d = hu - hl;
    if (d <= 0.0) return kNegInf;
    return -hl + std::log(-std::expm1(-d));
}

// Same eta integral with left/interval rows present: the gamma-like core is
// kept analytic and the remaining 1-D factor is integrated in t = ln q.
double log_inner_numeric(const ProbeRows& rows, double prior_b, double beta,
                         double mu_off, double cap, int panels) {
    const std::size_t n_exact = rows.dx_exact.size();
    const double n_f = static_cast<double>(n_exact);
    double sum_ln_a = 0.0;
    for (double dx : rows.dx_exact) sum_ln_a += std::log(dx + mu_off);

    double ln_base = log_hazard_sum(rows, beta, mu_off);
    const bool gamma_factor = ln_base > kNegInf;
    if (!gamma_factor) {
        std::vector<double> anchors;
        for (const auto& [dl, du] : rows.dx_general) {
            const double a = dl + mu_off > 0.0 ? dl + mu_off : du + mu_off;
            anchors.push_back(beta * std::log(a));
        }
        ln_base = log_sum_exp(anchors);
    }

    const double ln_vmin = ln_base - beta * std::log(cap);
    const int decay_rate =
        static_cast<int>(n_exact) + static_cast<int>(rows.dx_general.size());
    const double t_peak = gamma_factor && n_exact > 0 ? std::log(n_f) : 0.0;
    double t_lo = ln_vmin;
    if (decay_rate > 0)
        t_lo = std::max(t_lo, t_peak - 65.0 / decay_rate - 5.0);
    const double t_hi =
        gamma_factor ? t_peak + std::log(5.0 + 50.0 / std::max(n_f, 1.0)) : 60.0;
    if (!(t_lo < t_hi)) return kNegInf;

    // Log-integrand values on the composite GL grid, summed via max shift.
    std::vector<double> vals, wgts;
    vals.reserve(static_cast<std::size_t>(panels) * 16);
    wgts.reserve(vals.capacity());
    const double pw = (t_hi - t_lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = t_lo + (p + 0.5) * pw;
        for (std::size_t i = 0; i < 8; ++i) {
            for (double sign : {-1.0, 1.0}) {
                const double t = mid + sign * 0.5 * pw * kGl16Nodes[i];
                const double ln_eta = (ln_base - t) / beta;
                double v = gamma_factor ? n_f * t - std::exp(t) : 0.0;
                for (const auto& [dl, du] : rows.dx_general)
                    v += log_general_mass(dl, du, mu_off, beta, ln_eta);
                vals.push_back(v);
                wgts.push_back(0.5 * pw * kGl16Weights[i]);
            }
        }
    }
    double m = kNegInf;
    for (double v : vals) m = std::max(m, v);
    if (m == kNegInf) return kNegInf;
    double acc = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        acc += wgts[i] * std::exp(vals[i] - m);
    const double ln_j = m + std::log(acc);

    double ln_inner = (n_f - prior_b - 1.0) * std::log(beta) +
                      (beta - 1.0) * sum_ln_a + ln_j;
    if (n_exact > 0) ln_inner -= n_f * ln_base;
    return ln_inner;
}

struct ProbeGrid {
    int s_panels;
    int w_panels;
    int inner_panels;
};

double outer_integral(const ProbeRows& rows, double prior_b, double cap,
                      ProbeInner path, const ProbeGrid& grid, Exec exec) {
    const double s_lo = kLogBetaFloor, s_hi = std::log(cap);
    const double sw = (s_hi - s_lo) / grid.s_panels;
    const double ww = kWCap / grid.w_panels;
    const double ln_mu_hi = std::log(rows.mu_hi);

    auto integrand = [&](double s, double w) {
        const double beta = std::exp(s);
        const double mu_off = rows.mu_hi * std::exp(-w);
        const double ln_inner =
            path == ProbeInner::closed_form
                ? log_inner_closed(rows, prior_b, beta, mu_off, cap)
                : log_inner_numeric(rows, prior_b, beta, mu_off, cap,
                                    grid.inner_panels);
        return std::exp(ln_inner + s + ln_mu_hi - w);
    };

    const int total = grid.s_panels * grid.w_panels;
    std::vector<double> parts(static_cast<std::size_t>(total));
    auto one_panel = [&](int p) {
        const int si = p / grid.w_panels;
        const int wi = p % grid.w_panels;
        const double smid = s_lo + (si + 0.5) * sw;
        const double wmid = (wi + 0.5) * ww;
        double acc = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            for (double ssign : {-1.0, 1.0}) {
                const double s = smid + ssign * 0.5 * sw * kGl16Nodes[i];
                const double ws = 0.5 * sw * kGl16Weights[i];
                for (std::size_t j = 0; j < 8; ++j) {
                    for (double wsign : {-1.0, 1.0}) {
                        const double w = wmid + wsign * 0.5 * ww * kGl16Nodes[j];
                        acc += ws * 0.5 * ww * kGl16Weights[j] * integrand(s, w);
                    }
                }
            }
        }
        parts[static_cast<std::size_t>(p)] = acc;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int p = 0; p < total; ++p) one_panel(p);
    } else {
        for (int p = 0; p < total; ++p) one_panel(p);
    }
    return pairwise_sum(parts);
}

}  // namespace

double properness_probe(const ComponentDataset& data, const PriorSpec& prior,
                        double domain_cap, ProbeInner inner, Exec exec) {
    if (!(domain_cap > 1.0)) throw ConfigError("probe domain cap must exceed 1");
    const ProbeRows rows = split_rows(data);

    ProbeInner path = inner;
    if (path == ProbeInner::automatic)
        path = rows.dx_general.empty() && !rows.dx_exact.empty()
                   ? ProbeInner::closed_form
                   : ProbeInner::numeric;
    if (path == ProbeInner::closed_form &&
        (!rows.dx_general.empty() || rows.dx_exact.empty()))
        throw ConfigError("closed-form probe needs exact/right-censored rows only");

    const ProbeGrid full = path == ProbeInner::closed_form
                               ? ProbeGrid{48, 48, 0}
                               : ProbeGrid{12, 12, 64};
    const ProbeGrid half{full.s_panels / 2, full.w_panels / 2, full.inner_panels};

    const double fine = outer_integral(rows, prior.b, domain_cap, path, full, exec);
    const double coarse = outer_integral(rows, prior.b, domain_cap, path, half, exec);
    const double scale = std::max(std::abs(fine), 1e-300);
    const double rel_err = std::abs(fine - coarse) / scale;
    if (!(rel_err < 5e-3))
        throw QuadratureError("posterior-mass probe did not converge", rel_err);
    return fine;
}

}  // namespace reliab
