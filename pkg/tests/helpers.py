"""Shared generators for the test suite."""

from fractions import Fraction


def random_word(rng, n, ops=1):
    """Uniformly random multilinear word on n leaves."""
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    opset = "*" if ops == 1 else "<>"

    def build(lo, hi):
        if hi - lo == 1:
            return labels[lo]
        cut = rng.randrange(lo + 1, hi)
        return (rng.choice(opset), build(lo, cut), build(cut, hi))

    return build(0, n)


def random_int_matrix(rng, nrows, ncols, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(ncols)]
            for _ in range(nrows)]


def random_rational_matrix(rng, nrows, ncols, bound=9):
    return [[Fraction(rng.randint(-bound, bound),
                      rng.randint(1, bound)) for _ in range(ncols)]
            for _ in range(nrows)]
