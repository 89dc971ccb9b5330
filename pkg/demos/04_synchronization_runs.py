"""Below- versus above-threshold synchronization runs.

Simulates a small network of chaotic relay systems twice: once with
negligible gains (the errors stay large) and once with gains 5% above the
computed thresholds (the total error contracts to the chattering floor).
CSV time series land in demo_runs/ and plot with any external tool.
"""

from pathlib import Path

import numpy as np

import pwsync as ps

OUT = Path(__file__).resolve().parent / "demo_runs"
OUT.mkdir(exist_ok=True)

relay = ps.relay_feedback_system()
cert = ps.relay_certificate()
gamma = np.eye(3)

n = 10
g_diff = ps.ring_graph(n)
g_disc = ps.erdos_renyi_graph(n, 0.3, seed=100)

report = ps.compute_thresholds(cert, gamma, gamma, g_diff, g_disc)
print(f"N = {n} relay nodes; ring + random layers")
print(f"thresholds: c* = {report.c_star:.2f}, cd* = {report.cd_star:.3f} "
      f"(lambda2 = {report.lambda2:.4f}, delta = {report.delta_d:.4f})")

for name, c, cd in [
    ("below", 0.1, 0.001),
    ("above", 1.05 * report.c_star, 1.05 * report.cd_star),
]:
    cfg = ps.SimConfig(
        node_field=relay,
        graph_diffusive=g_diff,
        graph_discontinuous=g_disc,
        c=c,
        cd=cd,
        dt=2e-4,
        t_end=5.0,
        init_seed=0,
        decimation=50,
    )
    run = ps.simulate(cfg)
    csv = OUT / f"{name}.csv"
    ps.write_run_csv(run, csv, per_node_errors=True)
    ps.write_run_metadata(run, OUT / f"{name}_meta.json")
    e = run.e_tot_series
    quarters = [e[int(k * (len(e) - 1) / 4)] for k in range(5)]
    print(f"\n{name}-threshold run: c = {c:.2f}, cd = {cd:.3f}")
    print("  e_tot at t = 0, 1.25, 2.5, 3.75, 5:", "  ".join(f"{v:.2e}" for v in quarters))
    print(f"  wrote {csv}")

print("\nthe above-threshold error settles at the chattering floor, O(cd * dt).")
