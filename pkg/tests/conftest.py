from hypothesis import strategies as st

import idempotent_forge
from idempotent_forge import GF, QQ, Matrix, Polynomial, composite


FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]

# filled by test_acceptance, printed at the end of the session
ACCEPTANCE_RESULTS = {}

# every certificate returned by construct or a builder during the session
PRODUCED_CERTIFICATES = []
_RECORDED = ("construct", "build_coprime_part", "build_pair_equal", "build_pair_offset",
             "build_nilpotent_diff", "build_shifted")


def _recording(fn):
    def wrapper(*args, **kwargs):
        cert = fn(*args, **kwargs)
        PRODUCED_CERTIFICATES.append(cert)
        return cert

    wrapper.__wrapped__ = fn
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# installed before any test module imports these names
for _name in _RECORDED:
    _fn = _recording(getattr(composite, _name))
    setattr(composite, _name, _fn)
    if hasattr(idempotent_forge, _name):
        setattr(idempotent_forge, _name, _fn)


def field_values(field, bound=5):
    if field.p is None:
        return st.fractions(min_value=-bound, max_value=bound, max_denominator=4)
    return st.integers(0, field.p - 1)


@st.composite
def polys(draw, field, max_degree=6):
    coeffs = draw(st.lists(field_values(field), max_size=max_degree + 1))
    return Polynomial(field, coeffs)


@st.composite
def monic_polys(draw, field, min_degree=1, max_degree=4):
    d = draw(st.integers(min_degree, max_degree))
    coeffs = draw(st.lists(field_values(field, 3), min_size=d, max_size=d))
    return Polynomial(field, coeffs + [1])


@st.composite
def matrices(draw, field, min_n=1, max_n=5, bound=3):
    n = draw(st.integers(min_n, max_n))
    vals = st.integers(-bound, bound) if field.p is None else st.integers(0, field.p - 1)
    rows = draw(st.lists(st.lists(vals, min_size=n, max_size=n), min_size=n, max_size=n))
    return Matrix(field, rows)


@st.composite
def invertibles(draw, field, n, bound=2):
    vals = st.integers(-bound, bound) if field.p is None else st.integers(0, field.p - 1)
    rows = draw(
        st.lists(st.lists(vals, min_size=n, max_size=n), min_size=n, max_size=n).filter(
            lambda r: Matrix(field, r).rank() == n
        )
    )
    return Matrix(field, rows)


def pytest_collection_modifyitems(items):
    # the commutation sweep must see certificates from every other test
    last = [it for it in items if it.get_closest_marker("sweep")]
    rest = [it for it in items if not it.get_closest_marker("sweep")]
    items[:] = rest + last


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {text}")
