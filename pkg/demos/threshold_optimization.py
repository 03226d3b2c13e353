"""Finding the EE-optimal gating threshold and the QoS regime boundary.

Reproduces the headline optimization table for the reference link, then
locates the exponent above which gating stops paying off.
"""

from eelink import (
    QosSpec,
    default_params,
    find_optimal_threshold,
    find_theta_threshold,
    invert_effective_capacity,
    sweep,
)

params = default_params()

print("Optimal threshold per QoS exponent")
print(f"  {'theta':>8} {'regime':>8} {'gamma0*':>9} {'max EE':>10} {'EE(0)':>10} {'gain':>7}")
for theta in (1e-4, 1e-5, 1e-6, 1e-7, 1e-3):
    r = find_optimal_threshold(params, QosSpec(theta=theta))
    gain = r.ee_opt / r.ee_baseline - 1.0
    print(
        f"  {theta:8.0e} {r.regime.value:>8} {r.gamma0_opt:9.4f}"
        f" {r.ee_opt:10.1f} {r.ee_baseline:10.1f} {gain:6.2%}"
    )

boundary = find_theta_threshold(params, 1e-5, 1e-2)
print(f"\nRegime boundary: gating helps below theta = {boundary:.4e}")

print("\nCross-check against a dense EE sweep (theta = 1e-4)")
rows = sweep(params, [1e-4], (0.0, 3.0), "EE", 601)
best = max(rows, key=lambda row: row[2])
print(f"  sweep argmax gamma0 = {best[1]:.4f}, EE = {best[2]:.1f} bits/J")

print("\nLargest threshold still carrying a given arrival rate (theta = 1e-4)")
qos = QosSpec(theta=1e-4)
for mu in (1519.7e3, 300e3):
    bound = invert_effective_capacity(params, qos, mu)
    print(f"  mu = {mu:11.1f} bits/s -> gamma0 bound {bound:.4f}")
