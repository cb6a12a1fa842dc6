import itertools
import random

import numpy as np
import pytest
from hypothesis import assume, given, settings

from subfit.errors import CapExceededError, NotDistributiveError, PreconditionError
from subfit.frames import (
    Operator,
    admits_only_top,
    enumerate_Fn,
    frame_product,
    is_inflator,
    is_nucleus,
    is_prenucleus,
    is_subfit,
    iterate_to_closure,
    operator_from_names,
    pair_operators,
    pointwise_join,
    preceq_relation,
    rather_below,
    theorem2_check,
    witness_nucleus,
    xi,
    xi_operator,
)
from subfit.lattice import boolean_lattice, chain, is_lattice_isomorphism

from .conftest import distributive_lattices, shuffled_lattices


def brute_force_Fn(L):
    """All top-only nuclei by trying every self-map against the raw axioms."""
    n, leq, meet, top = L.size, L.leq, L.meet, L.top
    out = []
    for f in itertools.product(range(n), repeat=n):
        if any(not leq[a, f[a]] for a in range(n)):
            continue
        if any(leq[a, b] and not leq[f[a], f[b]] for a in range(n) for b in range(n)):
            continue
        if any(not leq[meet[f[a], f[b]], f[meet[a, b]]] for a in range(n) for b in range(n)):
            continue
        if any(f[f[a]] != f[a] for a in range(n)):
            continue
        if any(f[a] == top and a != top for a in range(n)):
            continue
        out.append(f)
    return sorted(out)


class TestRatherBelow:
    def test_chain(self, chain3):
        bot, m, top = 0, 1, 2
        assert rather_below(chain3, m, bot)
        assert not rather_below(chain3, top, bot)

    def test_refines_order(self, corpus):
        for L in corpus:
            rel = preceq_relation(L).rel
            assert (rel | ~L.leq).all()
            assert rel.diagonal().all()
            # transitive
            r = rel.astype(int)
            assert ((r @ r > 0) <= rel).all()

    def test_relation_matches_scalar(self, corpus):
        for L in corpus[:12]:
            rel = preceq_relation(L).rel
            for a, b in itertools.product(range(L.size), repeat=2):
                assert rel[a, b] == rather_below(L, a, b)

    def test_square_is_order(self, square):
        assert np.array_equal(preceq_relation(square).rel, square.leq)

    def test_chain_extra_pair(self, chain3):
        extra = preceq_relation(chain3).rel & ~chain3.leq
        assert [tuple(p) for p in np.argwhere(extra)] == [(1, 0)]

    def test_one_element(self, one):
        assert preceq_relation(one).rel.all()

    def test_rejects_non_distributive(self, m3):
        with pytest.raises(NotDistributiveError):
            rather_below(m3, 0, 1)
        with pytest.raises(NotDistributiveError):
            xi_operator(m3)

    def test_json(self, chain3):
        assert ["m", "bot"] in preceq_relation(chain3).to_json()


class TestXi:
    def test_chain(self, chain3):
        assert [xi(chain3, a) for a in range(3)] == [1, 1, 2]
        assert xi_operator(chain3).to_json() == ["m", "m", "top"]

    def test_square_identity(self, square):
        assert xi_operator(square) == Operator.identity(square)

    def test_scalar_matches_operator(self, corpus):
        for L in corpus[:15]:
            assert tuple(xi(L, a) for a in range(L.size)) == xi_operator(L).table

    def test_is_nucleus_on_corpus(self, corpus):
        for L in corpus:
            x = xi_operator(L)
            assert is_prenucleus(x)
            assert is_nucleus(x)
            assert iterate_to_closure(x)[1] <= 1


class TestClassification:
    def test_identity(self, corpus):
        for L in corpus:
            op = Operator.identity(L)
            assert is_inflator(op) and is_prenucleus(op) and is_nucleus(op)
            assert admits_only_top(op)

    def test_constant_top(self, chain3, square):
        for L in (chain3, square):
            op = Operator.constant(L, L.top)
            assert is_inflator(op) and is_prenucleus(op) and is_nucleus(op)
            assert not admits_only_top(op)

    def test_chain_xi_table(self, chain3):
        assert is_nucleus(operator_from_names(chain3, ["m", "m", "top"]))

    def test_not_inflationary(self, chain3):
        assert not is_inflator(Operator.constant(chain3, 0))

    def test_not_monotone(self):
        L = chain(4)
        assert not is_inflator(Operator(L, (2, 1, 2, 3)))

    def test_inflator_not_prenucleus(self, square):
        # x -> top, everything else fixed: x∧y = bot is fixed but f(x)∧f(y) = y
        x = square.index["x"]
        table = list(range(4))
        table[x] = square.top
        op = Operator(square, tuple(table))
        assert is_inflator(op) and not is_prenucleus(op)

    def test_prenucleus_not_nucleus(self):
        L = chain(4)
        op = Operator(L, (1, 2, 3, 3))
        assert is_prenucleus(op) and not is_nucleus(op)

    @given(distributive_lattices(3))
    @settings(max_examples=30, deadline=None)
    def test_hierarchy(self, L):
        rng = random.Random(L.size)
        for _ in range(30):
            op = Operator(L, tuple(rng.randrange(L.size) for _ in range(L.size)))
            if is_nucleus(op):
                assert is_prenucleus(op)
            if is_prenucleus(op):
                assert is_inflator(op)


class TestJoinAndIteration:
    def test_pointwise_join(self, chain3):
        ident = Operator.identity(chain3)
        top = Operator.constant(chain3, chain3.top)
        assert pointwise_join([ident]) == ident
        assert pointwise_join([ident, top]) == top

    def test_empty_join(self):
        with pytest.raises(ValueError):
            pointwise_join([])

    def test_identity_closure(self, chain3):
        assert iterate_to_closure(Operator.identity(chain3)) == (Operator.identity(chain3), 0)

    def test_two_steps(self):
        L = chain(4)
        closure, steps = iterate_to_closure(Operator(L, (1, 2, 2, 3)))
        assert steps == 2 and closure.table == (2, 2, 2, 3)

    def test_three_steps(self):
        L = chain(4)
        closure, steps = iterate_to_closure(Operator(L, (1, 2, 3, 3)))
        assert steps == 3 and closure.table == (3, 3, 3, 3)
        assert is_nucleus(closure)

    def test_rejects_non_inflator(self, chain3):
        with pytest.raises(PreconditionError):
            iterate_to_closure(Operator.constant(chain3, 0))


class TestSubfit:
    def test_examples(self, chain3, square):
        assert is_subfit(square)
        assert not is_subfit(chain3)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_boolean(self, k):
        assert is_subfit(boolean_lattice(k))

    def test_three_way(self, corpus):
        for L in corpus:
            s = is_subfit(L)
            assert s == (xi_operator(L) == Operator.identity(L))
            assert s == bool(np.array_equal(preceq_relation(L).rel, L.leq))


class TestWitness:
    def test_chain(self, chain3):
        assert witness_nucleus(chain3, 0, 1).to_json() == ["m", "m", "top"]

    def test_bottom_gives_identity(self, corpus):
        for L in corpus:
            for a in range(L.size):
                assert witness_nucleus(L, a, L.bot) == Operator.identity(L)

    def test_square(self, square):
        x = square.index["x"]
        assert witness_nucleus(square, x, x) == Operator.identity(square)

    def test_precondition(self, chain3):
        with pytest.raises(PreconditionError):
            witness_nucleus(chain3, 0, 2)

    def test_all_pairs(self, corpus):
        for L in corpus:
            rel = preceq_relation(L).rel
            for a, b in itertools.product(range(L.size), repeat=2):
                if rel[b, a]:
                    g = witness_nucleus(L, a, b)
                    assert is_nucleus(g) and admits_only_top(g) and L.leq[b, g(a)]


class TestEnumerateFn:
    def test_two_chain(self):
        L = chain(2)
        assert enumerate_Fn(L) == [Operator.identity(L)]

    def test_three_chain(self, chain3):
        tables = [op.to_json() for op in enumerate_Fn(chain3)]
        assert tables == [["bot", "m", "top"], ["m", "m", "top"]]

    def test_one_element(self, one):
        assert enumerate_Fn(one) == [Operator.identity(one)]

    def test_cap(self):
        with pytest.raises(CapExceededError):
            enumerate_Fn(boolean_lattice(3))

    def test_matches_brute_force(self, corpus):
        for L in corpus:
            if L.size <= 6:
                assert [op.table for op in enumerate_Fn(L)] == brute_force_Fn(L)

    @given(shuffled_lattices(3))
    @settings(max_examples=25, deadline=None)
    def test_index_order_irrelevant(self, L):
        assume(L.size <= 5)
        assert [op.table for op in enumerate_Fn(L)] == brute_force_Fn(L)

    def test_members_below_xi(self, corpus):
        for L in corpus:
            if L.size <= 7:
                x = xi_operator(L)
                for f in enumerate_Fn(L):
                    assert f.leq(x)

    def test_theorem2(self, chain3, square):
        assert theorem2_check(chain3)
        assert theorem2_check(square)
        assert pointwise_join(enumerate_Fn(chain3)) == xi_operator(chain3)


class TestProduct:
    def test_two_by_two(self, square):
        P = frame_product(chain(2), chain(2))
        assert P.lattice.size == 4
        # (0,0) (0,1) (1,0) (1,1) against bot x y top
        assert is_lattice_isomorphism(P.lattice, square, [0, 1, 2, 3])

    def test_top(self, chain3, square):
        P = frame_product(chain3, square)
        assert P.lattice.top == P.index(chain3.top, square.top)
        assert P.lattice.bot == P.index(chain3.bot, square.bot)

    def test_xi_coordinatewise(self, corpus):
        rng = random.Random(7)
        for _ in range(10):
            A, B = rng.choice(corpus[:15]), rng.choice(corpus[:15])
            P = frame_product(A, B)
            assert xi_operator(P.lattice).table == pair_operators(
                xi_operator(A), xi_operator(B), P).table

    def test_cap(self):
        with pytest.raises(CapExceededError):
            frame_product(chain(3), chain(3), max_size=8)
