from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from lamkit.chords import Chord

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("repo")


def angles(max_den=240):
    return st.integers(1, max_den).flatmap(
        lambda q: st.integers(0, q - 1).map(lambda n: Fraction(n, q))
    )


def chords(max_den=240, degenerate=False):
    pairs = st.tuples(angles(max_den), angles(max_den))
    if not degenerate:
        pairs = pairs.filter(lambda t: t[0] != t[1])
    return pairs.map(lambda t: Chord(*t))
