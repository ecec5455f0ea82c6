"""Named example curves and the degenerating paths shipped with the package.

Each path is given by its start line ``L0`` on the dual curve, an optional
fixed endpoint ``L1`` and the seed for endpoint search when ``L1`` is
omitted. ``load_path`` re-certifies the segment every time; nothing here is
trusted without the exact Sturm check.
"""
from .dualgeom import ImplicitCurve, ParametricCurve
from .proxlift import degenerating_path

__all__ = ["CURVES", "PATHS", "curve", "load_path", "full_contact_curve"]


def _falling(d):
    """Coefficients (lowest first) of t (t-1) ... (t-(d-2))."""
    c = [0, 1]
    for i in range(1, d - 1):
        c = [(c[k - 1] if k else 0) - i * (c[k] if k < len(c) else 0) for k in range(len(c) + 1)]
    return c


def full_contact_curve(d):
    """The rational curve ``(t^d, t (t-1) ... (t-(d-2)), 1)``. The lines
    ``[1:0:0]`` and ``[0:0:1]`` meet it with full contact ``d``."""
    terms = []
    for k, a in reversed(list(enumerate(_falling(d)))):
        if a:
            mono = "t" if k == 1 else f"t^{k}"
            coef = "+" if a == 1 else "-" if a == -1 else f"{a:+d}*"
            terms.append(coef + mono)
    f = "".join(terms).lstrip("+")
    return f"t^{d},{f},1"


# name -> (kind, text)
CURVES = {
    "fermat": ("implicit", "X^3+Y^3+Z^3"),
    "conic": ("implicit", "X^2+Y^2-Z^2"),
    "quartic": ("implicit", "X^4+Y^4-Z^4+X*Y*Z^2"),
    "nodal-cubic": ("parametric", "t^2-1,t^3-t,1"),
    "nodal-quintic": ("parametric", "t^5-2*t^4,2*t^5-5*t^4-2*t^3+6*t^2+t-3,1"),
    "quartic-211": ("parametric", "t^4,t^3-3*t^2+2*t,1"),
    "full-contact-3": ("parametric", full_contact_curve(3)),
    "full-contact-4": ("parametric", full_contact_curve(4)),
    "full-contact-5": ("parametric", full_contact_curve(5)),
}

# name -> (curve, L0, L1 or None, seed, boundary partition)
PATHS = {
    # tangent at t = 3 of a rational quartic: simple tangency, fibre {2,1,1}
    "quartic-211": ("quartic-211", (11, -108, -243), None, 0, (2, 1, 1)),
    # a line of full contact with the quartic; fibre {4}
    "full-contact-4-line": ("full-contact-4", (1, 0, 0), (1, 0, 1), 0, (4,)),
    "full-contact-5-line": ("full-contact-5", (1, 0, 0), (1, 0, 1), 0, (5,)),
    # a flex tangent of the Fermat cubic; fibre {3}
    "fermat-flex": ("fermat", (1, 1, 0), None, 0, (3,)),
    # the rational bitangent of the nodal quintic; fibre {2,2,1}
    "quintic-bitangent": ("nodal-quintic", (1, -1, 0), None, 0, (2, 2, 1)),
}


def curve(name):
    kind, text = CURVES[name]
    return ImplicitCurve(text) if kind == "implicit" else ParametricCurve.parse(text)


def load_path(name):
    """``(curve, DegeneratingPath)`` for a shipped path, freshly certified."""
    cname, L0, L1, seed, _ = PATHS[name]
    C = curve(cname)
    return C, degenerating_path(C, L0, L1=L1, seed=seed)
