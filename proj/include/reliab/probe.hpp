#pragma once

// Posterior-mass probe. Integrates the posterior kernel over
// beta, eta in (0, cap], mu in (0, min finite observation bound) to exhibit
// divergence (a single exact observation: the value keeps growing as the cap
// grows) versus stabilization (two or more observations: the value settles).
//
// The eta integral is taken semi-analytically: with only exact and
// right-censored rows it reduces to an upper incomplete gamma function in
// q = S/eta^beta with S the summed beta-powers of the shifted times; with
// left/interval rows the same substitution leaves a 1-D integral handled
// numerically in log q. The outer (beta, mu) integral runs on the
// transformed plane (log beta, w) with mu = mu_hi (1 - e^{-w}), which fixes
// the mu-endpoint behavior so cap growth is attributable to beta alone.

#include "reliab/parallel.hpp"
#include "reliab/weibull3.hpp"

namespace reliab {

enum class ProbeInner {
    automatic,    // closed form when rows allow it, numeric otherwise
    closed_form,  // exact/right-censored rows only
    numeric
};

double properness_probe(const ComponentDataset& data, const PriorSpec& prior,
                        double domain_cap, ProbeInner inner = ProbeInner::automatic,
                        Exec exec = Exec::serial);

}  // namespace reliab
