"""Critical coupling gains for the two-layer (diffusive + discontinuous) protocol.

Sufficient gains for global asymptotic synchronization:

    c*   = mu2(Q)   / (lambda2(L)  * mu2_lower(P Gamma))
    cd*  = mu_inf(M) / (delta_d    * mu_inf_lower(P Gamma_d))

where lambda2 is the algebraic connectivity of the diffusive layer and
delta_d the minimum density of the discontinuous layer. The hypotheses
required alongside the gains: the certificate (P, Q, M) holds for the node
dynamics, both layer graphs are connected, and both inner-coupling measures
mu2_lower(P Gamma), mu_inf_lower(P Gamma_d) are strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import PwsVectorField, SigmaQuadCertificate, verify_sigma_quad
from .graphs import Graph, algebraic_connectivity, is_connected
from .matrix_measures import mu2, mu2_lower, mu_inf, mu_inf_lower
from .min_density import EXACT_VERTEX_CAP, min_density_exact, min_density_heuristic, remove_edges

__all__ = [
    "HypothesisRecord",
    "ThresholdReport",
    "critical_gains",
    "compute_thresholds",
    "ScenarioResult",
    "resilience_report",
]

# Strictly-positive checks on the inner-coupling measures use this margin.
POSITIVITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class HypothesisRecord:
    """Per-hypothesis outcome; certificate_verified is None when not sampled."""

    certificate_verified: bool | None
    diffusive_connected: bool
    discontinuous_connected: bool
    mu2_lower_p_gamma_positive: bool
    mu_inf_lower_p_gamma_d_positive: bool

    def all_ok(self) -> bool:
        return (
            self.certificate_verified is not False
            and self.diffusive_connected
            and self.discontinuous_connected
            and self.mu2_lower_p_gamma_positive
            and self.mu_inf_lower_p_gamma_d_positive
        )


@dataclass(frozen=True)
class ThresholdReport:
    """Critical gains with every intermediate quantity needed to recompute them."""

    c_star: float
    cd_star: float
    lambda2: float
    delta_d: float
    mu2_q: float
    mu2_lower_p_gamma: float
    mu_inf_m: float
    mu_inf_lower_p_gamma_d: float
    delta_method: str  # "exact" | "heuristic"
    hypotheses: HypothesisRecord

    @property
    def delta_certified(self) -> bool:
        """True when delta_d came from exact enumeration.

        A heuristic delta is an upper bound on the true minimum density, so
        heuristic cd_star is only a lower bound on the certified-sufficient
        gain and must be labelled as such.
        """
        return self.delta_method == "exact"


def critical_gains(
    mu2_q: float,
    lambda2: float,
    mu2_lower_p_gamma: float,
    mu_inf_m: float,
    delta_d: float,
    mu_inf_lower_p_gamma_d: float,
) -> tuple[float, float]:
    """The two threshold formulas evaluated exactly as stored in reports."""
    c_star = mu2_q / (lambda2 * mu2_lower_p_gamma)
    cd_star = mu_inf_m / (delta_d * mu_inf_lower_p_gamma_d)
    return c_star, cd_star


def compute_thresholds(
    cert: SigmaQuadCertificate,
    gamma: np.ndarray,
    gamma_d: np.ndarray,
    g_diffusive: Graph,
    g_discontinuous: Graph,
    *,
    field: PwsVectorField | None = None,
    verify_samples: int = 10_000,
    verify_seed: int = 0,
    exact_cap: int = EXACT_VERTEX_CAP,
    heuristic_seed: int = 0,
) -> ThresholdReport:
    """Evaluate both critical gains for a certified system on two layer graphs.

    Violated hypotheses raise ValueError naming the failed clause. When the
    node field is supplied, the certificate is additionally spot-checked by
    sampling (recorded in the hypothesis record, never raising: a sampled
    check can only falsify). The minimum density solver is exact up to
    exact_cap vertices and the Kernighan-Lin heuristic beyond, flagged in
    delta_method.
    """
    gamma = np.asarray(gamma, dtype=np.float64)
    gamma_d = np.asarray(gamma_d, dtype=np.float64)
    if g_diffusive.n_vertices != g_discontinuous.n_vertices:
        raise ValueError("both coupling layers must share the vertex set")
    if not is_connected(g_diffusive):
        raise ValueError("hypothesis violated: diffusive layer graph is not connected")
    if not is_connected(g_discontinuous):
        raise ValueError("hypothesis violated: discontinuous layer graph is not connected")

    m2l = mu2_lower(cert.p @ gamma)
    mil = mu_inf_lower(cert.p @ gamma_d)
    if m2l <= POSITIVITY_TOLERANCE:
        raise ValueError(
            f"hypothesis violated: mu2_lower(P @ Gamma) = {m2l:.6g} is not strictly positive"
        )
    if mil <= POSITIVITY_TOLERANCE:
        raise ValueError(
            f"hypothesis violated: mu_inf_lower(P @ Gamma_d) = {mil:.6g} is not strictly positive"
        )

    lambda2 = algebraic_connectivity(g_diffusive)
    if g_discontinuous.n_vertices <= exact_cap:
        density = min_density_exact(g_discontinuous, max_vertices=exact_cap)
    else:
        density = min_density_heuristic(g_discontinuous, seed=heuristic_seed)

    verified: bool | None = None
    if field is not None:
        verified = verify_sigma_quad(field, cert, n_samples=verify_samples, seed=verify_seed).holds

    mu2_q = mu2(cert.q)
    mu_inf_m = mu_inf(cert.m)
    c_star, cd_star = critical_gains(mu2_q, lambda2, m2l, mu_inf_m, density.delta, mil)
    record = HypothesisRecord(
        certificate_verified=verified,
        diffusive_connected=True,
        discontinuous_connected=True,
        mu2_lower_p_gamma_positive=True,
        mu_inf_lower_p_gamma_d_positive=True,
    )
    return ThresholdReport(
        c_star=c_star,
        cd_star=cd_star,
        lambda2=lambda2,
        delta_d=density.delta,
        mu2_q=mu2_q,
        mu2_lower_p_gamma=m2l,
        mu_inf_m=mu_inf_m,
        mu_inf_lower_p_gamma_d=mil,
        delta_method=density.method,
        hypotheses=record,
    )


@dataclass(frozen=True)
class ScenarioResult:
    """Minimum density and discontinuous gain after one edge-removal scenario."""

    label: str
    removed_edges: tuple[tuple[int, int], ...]
    delta: float | None
    cd_star: float | None
    delta_method: str | None
    error: str | None = None


def resilience_report(
    base: Graph,
    removal_scenarios,
    cert: SigmaQuadCertificate,
    gamma_d: np.ndarray,
    *,
    labels: list[str] | None = None,
    exact_cap: int = EXACT_VERTEX_CAP,
    heuristic_seed: int = 0,
) -> list[ScenarioResult]:
    """Recompute (delta, cd*) for each edge-removal scenario on the layer graph.

    Scenarios that disconnect the graph are reported as per-scenario errors
    rather than aborting the batch. Results are sorted by cd_star ascending
    (most resilient first); error entries sort last.
    """
    gamma_d = np.asarray(gamma_d, dtype=np.float64)
    mil = mu_inf_lower(cert.p @ gamma_d)
    if mil <= POSITIVITY_TOLERANCE:
        raise ValueError(
            f"hypothesis violated: mu_inf_lower(P @ Gamma_d) = {mil:.6g} is not strictly positive"
        )
    mu_inf_m = mu_inf(cert.m)

    results: list[ScenarioResult] = []
    for idx, edges in enumerate(removal_scenarios):
        label = labels[idx] if labels else f"scenario_{idx}"
        removed = tuple(tuple(sorted((int(u), int(v)))) for u, v in edges)
        try:
            g = remove_edges(base, removed)
            if not is_connected(g):
                raise ValueError("removal disconnects the graph")
            if g.n_vertices <= exact_cap:
                density = min_density_exact(g, max_vertices=exact_cap)
            else:
                density = min_density_heuristic(g, seed=heuristic_seed)
        except ValueError as exc:
            results.append(ScenarioResult(label, removed, None, None, None, str(exc)))
            continue
        cd_star = mu_inf_m / (density.delta * mil)
        results.append(ScenarioResult(label, removed, density.delta, cd_star, density.method))
    results.sort(key=lambda r: (r.cd_star is None, r.cd_star if r.cd_star is not None else 0.0))
    return results
