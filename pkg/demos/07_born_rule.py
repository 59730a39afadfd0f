#!/usr/bin/env python3
"""Non-Archimedean Born rule.

Probabilities are exact powers p^(-m/2) living in the value group.  The
resulting "probability" is ultrametric: monotone, maxitive on disjoint
unions, and spectacularly non-additive — two disjoint outcomes can both
have probability one.
"""

from padspec import (FieldTower, MeasurableSet, PDisc, PMatrix, StateVector,
                     born_probability, check_probability_axioms,
                     from_rational, one, zero)

t = FieldTower(p=5, N=16)
sigma_x = PMatrix.from_rationals(t, [[0, 1], [1, 0]])

plus_disc = MeasurableSet([PDisc(one(t), 4)])
minus_disc = MeasurableSet([PDisc(-one(t), 4)])

plus_state = StateVector((one(t), one(t)))       # eigenvector for +1
print("psi = (1, 1), the +1 eigenstate of sigma_x:")
print("  P(value near +1) =", born_probability(sigma_x, plus_state, plus_disc))
print("  P(value near -1) =", born_probability(sigma_x, plus_state, minus_disc))

e1 = StateVector((one(t), zero(t)))
print("\npsi = (1, 0), an even mixture of both eigenstates:")
p_plus = born_probability(sigma_x, e1, plus_disc)
p_minus = born_probability(sigma_x, e1, minus_disc)
print("  P(near +1) =", p_plus, "  P(near -1) =", p_minus)
print("  disjoint sets, both probability one: the measure is maxitive,")
print("  not additive")

tilted = StateVector((one(t) + from_rational(5, 1, t),
                      one(t) - from_rational(5, 1, t)))
print("\npsi = (1+5, 1-5): the minus-component is smaller by a factor 5:")
print("  P(near -1) =", born_probability(sigma_x, tilted, minus_disc),
      "(an exact value-group element, not a float)")

rep = check_probability_axioms(sigma_x, e1, plus_disc, minus_disc)
print("\naxiom check on (S, S') = (+disc, -disc):", rep.values)
print("  ultrametric bound:", rep.non_archimedean_ok,
      " disjoint-union maxitivity:", rep.orthogonality_ok)
