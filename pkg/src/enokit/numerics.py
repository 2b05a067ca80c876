"""Scalar backends and divided-difference tables.

Scalars are plain Python numbers. The float backend works in binary64.
The exact backend works in arbitrary-precision rationals (gmpy2 when
available, fractions.Fraction otherwise), so no operation ever rounds and
sign checks performed on exact scalars are authoritative.
"""

from fractions import Fraction

from .errors import InvalidMesh, ShapeError

try:
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a normal dependency
    _gmpy2 = None


# ---- Backends ----

class FloatBackend:
    """Binary64 scalars."""

    name = "float"
    exact = False

    def convert(self, x):
        """Coerce x to float. Accepts numbers and decimal or num/den strings."""
        if isinstance(x, str):
            return float(Fraction(x))
        return float(x)

    def parse(self, text):
        """Read a scalar from its serialized form."""
        return self.convert(text)

    def serialize(self, s):
        """Shortest decimal string that round-trips to the same float."""
        return repr(float(s))


class ExactBackend:
    """Arbitrary-precision rational scalars."""

    name = "exact"
    exact = True

    def __init__(self, use_gmpy2=None):
        if use_gmpy2 is None:
            use_gmpy2 = _gmpy2 is not None
        if use_gmpy2 and _gmpy2 is None:
            raise ValueError("gmpy2 requested but not installed")
        self._make = _gmpy2.mpq if use_gmpy2 else Fraction

    def convert(self, x):
        """Coerce x to a rational, exactly.

        Strings may be integers, decimals, or num/den fractions; decimals
        convert by their printed value ("0.1" becomes 1/10). Floats convert
        to their exact binary value.
        """
        if isinstance(x, str):
            f = Fraction(x)
            return self._make(f.numerator, f.denominator)
        if isinstance(x, float):
            num, den = x.as_integer_ratio()
            return self._make(num, den)
        if isinstance(x, Fraction):
            return self._make(x.numerator, x.denominator)
        return self._make(x)

    def parse(self, text):
        """Read a scalar from its serialized form."""
        return self.convert(text)

    def serialize(self, s):
        """num/den string, or a bare integer when the denominator is 1."""
        return str(s)


FLOAT = FloatBackend()
EXACT = ExactBackend()

_BACKENDS = {"float": FLOAT, "exact": EXACT}


def get_backend(name):
    """Look up a backend by name ("float" or "exact")."""
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; expected 'float' or 'exact'")


def is_float_data(values):
    """True when any scalar in values is a binary64 float."""
    return any(isinstance(v, float) for v in values)


def promote_integers(values):
    """Replace ints with exact rationals in all-exact data.

    Plain ints mixed into rational data (or data that is entirely ints)
    would turn true division into float division; promotion keeps every
    downstream quotient exact. Data containing floats is left alone.
    """
    vals = list(values)
    if not any(type(v) is int for v in vals):
        return vals
    if any(isinstance(v, float) for v in vals):
        return vals
    target = None
    for v in vals:
        if type(v) is not int:
            target = type(v)
            break
    conv = EXACT.convert if target is None else target
    return [conv(v) if type(v) is int else v for v in vals]


def halfway(a, b):
    """Midpoint of a and b: binary64 when either is a float, else exact."""
    if isinstance(a, float) or isinstance(b, float):
        return (a + b) / 2
    pa, pb = promote_integers([a, b])
    return (pa + pb) / 2


# ---- Divided differences ----

class DividedDifferenceTable:
    """Triangular table of divided differences over consecutive windows.

    Level 0 holds the ordinates; level j entry k is the order-j divided
    difference over points[k:k+j+1], so level j has len(points)-j entries.
    Every window at every level is stored, which lets stencil-selection
    code probe left and right extensions without recomputation.
    """

    def __init__(self, points, levels):
        self.points = points
        self.levels = levels

    @property
    def max_order(self):
        return len(self.levels) - 1

    def entry(self, order, start):
        """Order-`order` divided difference over points[start:start+order+1]."""
        return self.levels[order][start]


def divided_difference_table(points, values, max_order=None):
    """Build the divided-difference table of values over points.

    Args:
        points: strictly increasing abscissae.
        values: ordinates, one per point.
        max_order: highest difference order to compute (default: all).

    Returns:
        DividedDifferenceTable with levels 0..max_order.

    Raises:
        ShapeError: length mismatch or empty input.
        InvalidMesh: points not strictly increasing.
    """
    pts = list(points)
    vals = list(values)
    if len(pts) != len(vals):
        raise ShapeError(f"{len(pts)} points but {len(vals)} values")
    if not pts:
        raise ShapeError("empty point set")
    for k in range(len(pts) - 1):
        if not pts[k] < pts[k + 1]:
            raise InvalidMesh(
                f"points must be strictly increasing; offender at index {k + 1}"
            )
    pts = promote_integers(pts)
    vals = promote_integers(vals)
    n = len(pts)
    if max_order is None or max_order > n - 1:
        max_order = n - 1
    levels = [vals]
    for j in range(1, max_order + 1):
        prev = levels[j - 1]
        levels.append(
            [(prev[k + 1] - prev[k]) / (pts[k + j] - pts[k]) for k in range(n - j)]
        )
    return DividedDifferenceTable(tuple(pts), [tuple(level) for level in levels])
