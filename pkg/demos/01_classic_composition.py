"""
Classic composition
===================

A data analyst queries private databases k times; each query is answered
by an (epsilon, delta)-DP mechanism. This script walks through the two
classic ways of turning per-query guarantees into a guarantee for the
whole interaction, and shows where each one wins.

Run:  python demos/01_classic_composition.py
"""

from hypodp import (
    Advanced,
    MechanismSequence,
    PrivacyParams,
    advanced_compose,
    best_classic_bound,
    compose,
    simple_compose,
)

# %% Simple composition: epsilons and deltas just add up.
seq = MechanismSequence.homogeneous(0.1, 1e-6, 3)
g = simple_compose(seq)
print(f"3 queries at (0.1, 1e-6) each -> simple composition ({g.epsilon:.4g}, {g.delta:.4g})")

# Heterogeneous sequences are fine too.
mixed = [PrivacyParams(0.1, 0.0), PrivacyParams(0.2, 1e-6)]
g = simple_compose(mixed)
print(f"(0.1, 0) then (0.2, 1e-6)   -> simple composition ({g.epsilon:.4g}, {g.delta:.4g})")

# %% Advanced composition: spend a little extra delta (the slack) to get
# an epsilon that grows like sqrt(k) instead of k. It applies to k
# mechanisms with *identical* guarantees.
for k in (10, 100, 1000):
    seq = MechanismSequence.homogeneous(0.1, 0.0, k)
    simple = simple_compose(seq)
    advanced = advanced_compose(seq, delta_slack=1e-6)
    print(
        f"k={k:5d}: simple eps = {simple.epsilon:8.3f}   "
        f"advanced eps = {advanced.epsilon:8.3f} (plus delta slack 1e-6)"
    )

# %% The crossover: for small k simple composition is tighter, for large
# k advanced wins. best_classic_bound picks whichever has the smaller
# epsilon.
print("\nepsilon per k (eps_i = 0.05, slack 1e-6):")
print(f"{'k':>6} {'simple':>10} {'advanced':>10} {'best':>10}")
for k in (1, 2, 5, 10, 20, 50, 200):
    seq = MechanismSequence.homogeneous(0.05, 0.0, k)
    s = simple_compose(seq).epsilon
    a = advanced_compose(seq, 1e-6).epsilon
    b = best_classic_bound(seq, 1e-6).epsilon
    print(f"{k:>6} {s:>10.4f} {a:>10.4f} {b:>10.4f}")

# %% The theorem objects are first-class values, so code paths that need
# "some composition theorem" can be parameterized.
seq = MechanismSequence.homogeneous(0.01, 0.0, 365)
for theorem in (Advanced(1e-5),):
    g = compose(seq, theorem)
    print(f"\n365 queries at eps=0.01 under advanced(1e-5): ({g.epsilon:.4f}, {g.delta:.1e})")
