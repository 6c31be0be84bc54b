"""Fixed test systems shared by several test modules."""
from quartic_pairs.forms import FormPair

# two independent indefinite diagonal forms in disjoint variables; N(P) and the
# box integral both factor into one-form pieces
SPLIT_INDEFINITE = FormPair((1, 1, 1, -1, -1) + (0,) * 5, (0,) * 5 + (1, 1, 1, -1, -1))

# s = 22, q0 = 17; chosen by the deterministic hill-climb in scripts/preliminary_scans.py
# (random pairs of this size do not show tail decay at q <= 64, see the notes)
TAIL_DECAY_PAIR = FormPair(
    (-6, 0, -1, -3, -2, 6, -2, 5, 2, -6, 2, -1, -5, 3, 4, -5, -6, 2, -4, 5, 3, -1),
    (-3, 6, 5, 0, 2, 3, 3, -2, 6, 6, 4, -2, 2, 0, 5, 2, 6, -2, 4, 1, -6, 4))
TAIL_RATIOS = (0.43459887301487693, 0.40076247249912844)

# s = 22, q0 = 12, nonsingular integer zero at x0 = x1 = x10 = x11 = 1
SOLUBLE_PAIR = FormPair((1, -1) * 5 + (0,) * 10 + (1, -1), (0,) * 10 + (1, -1) * 5 + (1, 1))
