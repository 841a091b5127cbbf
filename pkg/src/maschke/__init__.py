"""Verification toolkit for the modularity of Maschke's octic surface S,
the double octic threefold X, the quotient threefold Y, and the associated
K3 / elliptic curve isogeny chain.

Everything here is desk scale: point counts over F_p and F_{p^2} by direct
(vectorised) enumeration, exact linear algebra over Q for trace extraction,
exact arithmetic in Q(sqrt3, sqrt-5) for the isogeny algebra, and a small
pipeline that replays each verification and emits a report.
"""

__version__ = "0.1.0"
