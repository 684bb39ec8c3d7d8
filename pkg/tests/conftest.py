import functools

from yoneda.exactla import FieldSpec
from yoneda.quiveralg import Quiver, make_monomial, make_nakayama_cyclic, make_nakayama_linear, truncated_polynomial

GF = FieldSpec.prime()
Q = FieldSpec.rational()


def suite_algebras(field=GF):
    """A mixed collection used by several consistency tests."""
    return [
        make_nakayama_linear([1], field),
        make_nakayama_linear([1, 2, 2], field),
        make_nakayama_linear([1, 2, 3, 3, 2], field),
        make_nakayama_linear([1, 1, 2, 3, 2], field),
        truncated_polynomial(2, field),
        truncated_polynomial(3, field),
        truncated_polynomial(4, field),
        make_nakayama_cyclic([3, 2, 3], field),
        make_nakayama_cyclic([2, 2], field),
        make_nakayama_cyclic([4, 3], field),
        # two loops at one vertex with all length-2 products zero but yx
        make_monomial(Quiver(1, ((1, 1), (1, 1))), [[0, 0], [1, 1], [0, 1]], field),
        # a non-Nakayama tree: 1 -> 2 -> 3 and 2 -> 4, one relation
        make_monomial(Quiver(4, ((1, 2), (2, 3), (2, 4))), [[0, 1]], field),
        # oriented 3-cycle with relations of length 2 and 3
        make_monomial(Quiver(3, ((1, 2), (2, 3), (3, 1))), [[0, 1], [1, 2, 0]], field),
    ]


@functools.lru_cache(maxsize=None)
def cached_model(key, degree, k_max, rule="leftmost"):
    from yoneda.transfer import transfer_minimal_model
    kind, c, fk = key
    F = GF if fk == "p" else Q
    alg = truncated_polynomial(c[0], F) if kind == "poly" else (
        make_nakayama_linear(list(c), F) if kind == "lin" else make_nakayama_cyclic(list(c), F))
    return transfer_minimal_model(alg, degree, k_max, pivot_rule=rule)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
