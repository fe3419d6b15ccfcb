"""
qswci - classifier and bounded enumerator for quasismooth weighted complete intersections.

Families X_{d_1,...,d_c} in P(a_0,...,a_n) are handled purely through their
numerical data with exact arithmetic: quasismoothness via the subset
conditions, cyclic quotient singularities at coordinate points, effective
degree bounds, and a sharded enumerator that regenerates classification
lists such as the 95 K3 weight systems.
"""

__version__ = "0.1.0"
