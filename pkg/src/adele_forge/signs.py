"""Global sign conventions, fixed once by the sign audit.

Three independent orientation choices interact across the package: the
exponent the residue morphism applies to weight-2 tame symbols on a curve,
the orientation of the surface product cycle against positive intersection
multiplicities, and the exponent relating the Massey triple product to the
Weil pairing.  Each is pinned by a canonical fixture in
``pairing.sign_audit`` rather than trusted from any convention.
"""

# nu on a weight-2 degree-1 curve cochain sends the component at v to
# tame_symbol(component, v) ** NU_WEIGHT2_EXPONENT.
NU_WEIGHT2_EXPONENT = 1

# surface_product_cycle multiplies the raw two-step flag residue sum by this,
# making line.line come out as +1.
SURFACE_CYCLE_SIGN = -1

# direct image of the Massey triple product equals pairing ** MASSEY_EXPONENT.
MASSEY_PAIRING_EXPONENT = -1
