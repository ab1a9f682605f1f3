from hypothesis import given, strategies as st

from towerkit.ops import (
    Monotone,
    all_monotone,
    all_surjections,
    codegeneracy,
    coface,
    compose,
    epi_mono,
    identity,
    missing_of_injection,
    surjection_of_word,
    word_of_surjection,
)


def monotone_strategy(max_n=4):
    def build(dom, cod, picks):
        img = []
        v = 0
        for p in picks[: dom + 1]:
            v = min(cod, v + p)
            img.append(v)
        return Monotone(cod, tuple(img))

    return st.builds(
        build,
        st.integers(0, max_n),
        st.integers(0, max_n),
        st.lists(st.integers(0, 2), min_size=max_n + 1, max_size=max_n + 1),
    )


def test_counts():
    assert len(all_monotone(0, 3)) == 4
    assert len(all_monotone(1, 1)) == 3  # identity and two constants
    assert len(all_monotone(2, 1)) == 4
    assert len(all_surjections(2, 1)) == 2


def test_simplicial_identities():
    # cosimplicial identities of the elementary maps
    for n in range(1, 4):
        for i in range(n):
            for j in range(i + 1, n + 1):
                assert compose(coface(n + 1, j), coface(n, i)) == compose(
                    coface(n + 1, i), coface(n, j - 1)
                )
    for n in range(0, 4):
        for i in range(n + 1):
            assert compose(codegeneracy(n, i), coface(n + 1, i)) == identity(n)
            assert compose(codegeneracy(n, i), coface(n + 1, i + 1)) == identity(n)


def test_word_round_trip():
    for n in range(0, 5):
        for p in range(0, n + 1):
            for s in all_surjections(n, p):
                w = word_of_surjection(s)
                assert all(a > b for a, b in zip(w, w[1:]))
                assert surjection_of_word(w, n) == s


@given(monotone_strategy())
def test_epi_mono_factorization(alpha):
    delta, sigma = epi_mono(alpha)
    assert delta.is_injective()
    assert sigma.is_surjective()
    assert compose(delta, sigma) == alpha


@given(monotone_strategy(), st.data())
def test_compose_associative(f, data):
    g = data.draw(monotone_strategy())
    h = data.draw(monotone_strategy())
    # realign codomains/domains so that h . g . f makes sense
    g = Monotone(h.dom, tuple(min(v, h.dom) for v in g.img))
    f = Monotone(g.dom, tuple(min(v, g.dom) for v in f.img))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_missing_of_injection():
    delta = Monotone(4, (1, 3))
    assert missing_of_injection(delta) == (4, 2, 0)
