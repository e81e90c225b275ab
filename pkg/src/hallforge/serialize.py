"""Exact JSON encoding of scalars, classes and algebra elements."""
from __future__ import annotations

from .arith import Scalar
from .quivercat import IsoClass


def class_ref(c: IsoClass | None):
    if c is None:
        return None
    return {"dim": list(c.dim), "index": c.index}


def scalar_json(s: Scalar) -> dict:
    return s.to_json()


def _sort_key(term: dict):
    return repr(term)


def element_json(x) -> dict:
    """Element JSON: {"terms": [{"k", "left", "right", "coeff"}...]} in canonical order.

    Hall elements emit ``"right": null``; tensors of two Hall elements also
    carry ``"k_right"`` for the Cartan part of the right factor.
    """
    from .double import DoubleElement
    from .hall import HallElement, TensorElement

    terms = []
    if isinstance(x, HallElement):
        for (a, A), c in x.terms.items():
            terms.append({"k": list(a), "left": class_ref(A), "right": None, "coeff": c.to_json()})
    elif isinstance(x, DoubleElement):
        for (a, A, B), c in x.terms.items():
            terms.append({"k": list(a), "left": class_ref(A), "right": class_ref(B), "coeff": c.to_json()})
    elif isinstance(x, TensorElement):
        for (a, A, b, B), c in x.terms.items():
            terms.append(
                {"k": list(a), "left": class_ref(A), "k_right": list(b), "right": class_ref(B), "coeff": c.to_json()}
            )
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    terms.sort(key=_sort_key)
    return {"terms": terms}


def value_json(x):
    if isinstance(x, Scalar):
        return x.to_json()
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    return element_json(x)
