"""Weierstrass gap sequences at places of maximal Fermat curves over F_{q^2}.

The heavy lifting lives in the compiled extension ``fermatgaps._core``; this
package adds thin dict-returning conveniences on top of it.
"""

import json as _json

from ._core import Curve, Place, semigroup_from_gaps

__all__ = ["Curve", "Place", "semigroup_from_gaps", "classify", "pq_polynomials"]


def classify(curve, d_max=1, threads=0, oracle_only=False):
    """Survey all places of degree <= d_max and group them by gap set."""
    return _json.loads(curve.classify_json(d_max, threads, oracle_only))


def pq_polynomials(curve, i):
    """Classification polynomial pair as digit-vector coefficient lists."""
    return _json.loads(curve.pq_polynomials_json(i))
