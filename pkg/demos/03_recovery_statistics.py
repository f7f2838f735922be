"""
How often does the gcd give the prime?
======================================

For each block length n we run a batch of random keys and count how often
d_i equals p_i exactly, how often it is 2 p_i, and how often anything else
happens. The reference line is 1 / zeta(n - 1), the chance that n - 1 random
integers share no common factor.
"""

from caoli import TrialConfig, coprimality_heuristic, render_report, run_trials

TRIALS = 100

print(f"{'n':>3} {'exact':>8} {'2p':>6} {'other':>6} {'failed':>7} {'1/zeta(n-1)':>12}")
for n in range(3, 11):
    stats = run_trials(TrialConfig(trials=TRIALS, n=n, min_prime_bits=64, base_seed=n))
    print(
        f"{n:>3} {stats.exact_fraction:>8.4f} {stats.cofactor2_count:>6} "
        f"{stats.other_cofactor_count:>6} {stats.failed_count:>7} {coprimality_heuristic(n):>12.4f}"
    )

#############################################################################
# The full report for one configuration.
print()
print(render_report(run_trials(TrialConfig(trials=200, n=8, min_prime_bits=64, base_seed=0))))
