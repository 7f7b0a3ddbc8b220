#-----------------------------------------------------------------------------+
# efmodelconstants.py - numeric constants shared by the model modules
#-----------------------------------------------------------------------------+
from fractions import Fraction

# series_core
SC_DEFAULT_TRUNC = Fraction(200)      # working truncation for identity checks

# eta_quotients
EQ_ETA_SHIFT = Fraction(1, 24)        # q^{1/24} prefactor of eta

# elliptic_special
ES_LATTICE_RADIUS = 200               # outer Eisenstein summation radius
ES_TRANSPORT_TOLERANCE_EXP = 18       # relative tolerance 10^-18
ES_TRANSPORT_DIGITS = 60
ES_HALF = Fraction(1, 2)
ES_TRANSLATION_TRUNC = 30            # terms per series in the translation grid

# decomposition
DC_J4_POLE_ORDER = 4                  # j(4 tau) ~ q^-4
DC_RELATION_ORDER = 60                # residual order checked for the j(4 tau) relation
DC_E4_FACTOR = 240                    # E4 = 1 + 240 sum sigma_3(n) q^n

# cm_numerics
CM_DEFAULT_DIGITS = 300
CM_LADDER = (300, 450, 700)           # precision escalation rungs
CM_LADDER_STEP = 150                  # rung step beyond a custom start
CM_GUARD_DIGITS = 15                  # working digits above the requested
CM_REALNESS_SLACK = 10                # imag part must be < 10^-(digits-slack)
CM_MIN_DIRECT_IMAG = Fraction(1, 1000)  # direct eta refused below this Im(tau)

# reciprocity
RC_ROUNDING_EXPONENT = Fraction(1, 2)  # accept residual < 10^-(digits/2)
RC_INVARIANT_SCALAR = 256              # 256 * eta(N t)^8 / eta((N/4) t)^8
# printed reference polynomials, highest degree first, keyed by (d_K, N)
RC_REFERENCE_POLYS = {
    (-7, 12): (1, 64, 2365, 5617, 1025614, 13744576, 99275140, 263731264, 1),
}
