"""Sign conventions shared by the lens, surgery and family modules.

L(p, q) is the result of -p/q surgery on the unknot in S^3, and B(p, q) is
the two-bridge link whose double branched cover is L(p, q). Everything that
turns a surgery coefficient into a lens space, or decides whether two
notations differ by a mirror, reads the constants below.
"""

# L(p, q) := (LENS_SURGERY_SIGN * p / q)-surgery on the unknot
LENS_SURGERY_SIGN = -1

# m-surgery on the unknot is L(m, UNKNOT_SURGERY_Q), as m/1 = -m/-1
UNKNOT_SURGERY_Q = LENS_SURGERY_SIGN

# q -> q mod p only picks another representative
RESIDUE_REDUCTION_IS_MIRROR = False

# q -> -q reverses orientation
NEGATION_IS_MIRROR = True

# L(-p, q) is rewritten as L(p, -q); the rewrite is flagged as a mirror in
# the notation even though both name the same oriented manifold.
NEGATIVE_P_IS_FLAGGED = True

# canonical names of the degenerate lens spaces
S3 = (1, 0)
S1_X_S2 = (0, 1)
