"""How fast the average secrecy rate decays as the eavesdropper grows.

Closed form, sandwich bounds, large-system approximation, and a Monte
Carlo cross-check on one table. The bounds pinch at beta = 1; here beta
is below one so they stay visibly apart.
"""

from anmimo import (
    SystemConfig,
    asymptotic_average_rate,
    average_rate_bounds,
    average_secrecy_rate,
    mc_average_secrecy_rate,
)

ALPHA = 10**0.3  # eavesdropper-side SNR, 3 dB
BETA = 10**-0.3
GAMMA = 10**0.3

print(f"{'n_e':>4} {'exact':>9} {'lower':>9} {'upper':>9} {'approx':>9} "
      f"{'mc':>9} {'mc_err':>8}")
for n_e in range(1, 13):
    cfg = SystemConfig(n_a=6, n_b=3, n_e=n_e, alpha=ALPHA, beta=BETA, gamma=GAMMA)
    exact = average_secrecy_rate(cfg)
    lower, upper = average_rate_bounds(cfg)
    approx = asymptotic_average_rate(cfg)
    est = mc_average_secrecy_rate(cfg, 20_000, seed=n_e, clamp=False)
    print(f"{n_e:>4} {exact:>9.4f} {lower:>9.4f} {upper:>9.4f} {approx:>9.4f} "
          f"{est.mean:>9.4f} {est.stderr:>8.4f}")

print()
print("rates in nats per channel use; mc column is the unclamped mean")
