import pytest


@pytest.fixture
def exact_pair():
    """Builds an exact projection pair from nested lists of entries."""
    from projcalc.pairs import build_pair
    from projcalc.ring import StarRingContext

    def _build(p, q):
        ctx = StarRingContext("exact", len(p))
        return build_pair(ctx.element(p), ctx.element(q))

    return _build


@pytest.fixture
def float_pair():
    from projcalc.pairs import build_pair
    from projcalc.ring import StarRingContext

    def _build(p, q, tolerance=None):
        ctx = StarRingContext("float", len(p))
        if tolerance is not None:
            ctx = ctx.with_tolerance(tolerance)
        return build_pair(ctx.element(p), ctx.element(q))

    return _build
