import pytest
from hypothesis import given
from hypothesis import strategies as st

from mtape.automaton import (
    NWord,
    accepts,
    bounded_universe,
    enumerate_language,
    is_deterministic,
    validate,
    witness,
)
from mtape.encoding import (
    CHECKERS,
    SIGMA,
    DecodeError,
    decode_nat,
    decode_seq,
    encode_nat,
    encode_seq,
)
from mtape.formula import (
    And,
    FormulaError,
    Not,
    Or,
    Pred,
    PredicateBinding,
    builtin_env,
    compile,
    conj,
    distribute,
    evaluate,
    infer_sorts,
    lemma_complete,
    satisfied_by,
    shared_per_conjunction,
    variables,
)
from mtape.predicates import (
    aut_anyX,
    aut_anyY,
    aut_cat,
    aut_dec,
    aut_eq,
    aut_L1,
    aut_L2,
    aut_L3,
    aut_L4,
    aut_len,
    aut_rest,
)

ENV = builtin_env()


def W(**words):
    return NWord(words)


def models(f, max_len):
    """Brute force: every well-formed bounded n-word satisfying ``f``."""
    tapes = variables(f)
    return {x for x in bounded_universe(SIGMA, tapes, max_len) if satisfied_by(f, ENV, x)}


elements = st.text(alphabet="ab", max_size=2)


@given(st.lists(elements, max_size=3))
def test_sequence_round_trip(items):
    assert decode_seq(encode_seq(items)) == items
    assert CHECKERS["seq"].matches(encode_seq(items))


@given(st.integers(min_value=0, max_value=20))
def test_nat_round_trip(n):
    assert decode_nat(encode_nat(n)) == n


@pytest.mark.parametrize("word", ["a", "a#b", "#c#"])
def test_malformed_sequences(word):
    with pytest.raises(DecodeError):
        decode_seq(word)


class TestBuilders:
    def test_all_valid(self):
        builders = [aut_eq(), aut_cat(), aut_anyX(), aut_anyY(), aut_L1(), aut_L2(), aut_L3(), aut_L4()]
        for A in builders + [b.template for b in ENV.values()]:
            assert validate(A) == []

    def test_deterministic_except_last(self):
        for name, b in ENV.items():
            assert is_deterministic(b.template) is (name != "last")

    def test_len(self):
        assert accepts(aut_len(), W(X="a#b#", N="aa"))
        assert not accepts(aut_len(), W(X="a#", N="aa"))

    def test_dec(self):
        assert accepts(aut_dec(), W(M="", N="a"))
        assert not accepts(aut_dec(), W(M="a", N="a"))

    def test_rest(self):
        assert accepts(aut_rest(), W(X="ab#a#", Y="a#"))
        assert not accepts(aut_rest(), W(X="", Y=""))

    def test_L1_first_member(self):
        # n = 0 gives ⟨abc, aabca⟩; the Y component starts a(bc)⁰ = a, then abca
        assert accepts(aut_L1(), W(X="abc", Y="aabca"))
        assert not accepts(aut_L1(), W(X="abc", Y="abca"))
        assert accepts(aut_L1(), W(X="abcabc", Y="abcabca"))

    def test_L2_members(self):
        assert accepts(aut_L2(), W(X="abcabc", Y="abcabca"))
        assert accepts(aut_L2(), W(X="", Y="a"))

    @pytest.mark.parametrize("name", sorted(ENV))
    def test_template_matches_semantics(self, name):
        b = ENV[name]
        f = Pred(name, *b.template.tapes)
        max_len = 3 if b.arity < 3 else 2
        assert enumerate_language(compile(f, ENV), max_len) == models(f, max_len)


class TestFormulaBasics:
    def test_sorts(self):
        f = conj(Pred("len", "X", "N"), Pred("rest", "X", "Y"))
        assert infer_sorts(f, ENV) == {"X": "seq", "N": "nat", "Y": "seq"}

    def test_sort_conflict(self):
        with pytest.raises(FormulaError):
            infer_sorts(And(Pred("len", "X", "N"), Pred("dec", "X", "N")), ENV)

    def test_unbound(self):
        with pytest.raises(FormulaError):
            compile(Pred("nope", "X"), ENV)

    def test_arity(self):
        with pytest.raises(FormulaError):
            compile(Pred("len", "X"), ENV)

    def test_repeated_argument(self):
        with pytest.raises(FormulaError):
            compile(Pred("eq", "X", "X"), ENV)

    def test_nondeterministic_complement(self):
        with pytest.raises(FormulaError):
            compile(Not(Pred("last", "Z", "U")), ENV)

    def test_union_tape_mismatch(self):
        with pytest.raises(FormulaError):
            compile(Or(Pred("len", "X", "N"), Pred("dec", "M", "N")), ENV)

    def test_binding_arity_checked(self):
        with pytest.raises(FormulaError):
            PredicateBinding("eq", aut_eq(), ("seq",))

    def test_distribute(self):
        a, b, c = Pred("zero", "N"), Pred("zero", "M"), Pred("zero", "K")
        assert distribute(And(a, Or(b, c))) == Or(And(a, b), And(a, c))
        assert distribute(And(Or(a, b), c)) == Or(And(a, c), And(b, c))

    def test_shared_variables(self):
        f = conj(Pred("len", "Y", "M"), Pred("rest", "X", "Y"), Pred("len", "X", "N"))
        assert shared_per_conjunction(f) == [("X",), ("Y",)]
        assert lemma_complete(f)
        assert not lemma_complete(And(Pred("len", "X", "N"), Pred("size", "X", "N")))


class TestCompile:
    def test_leaf_is_renamed_template(self):
        A = compile(Pred("eq", "P", "Q"), ENV)
        assert A.tapes == ("P", "Q")
        assert accepts(A, W(P="a#", Q="a#"))

    def test_not_eq(self):
        A = compile(Not(Pred("eq", "X", "Y")), ENV)
        assert accepts(A, W(X="a", Y="b"))
        assert not accepts(A, W(X="ab", Y="ab"))

    def test_negation_relative_to_sorts(self):
        A = compile(Not(Pred("len", "X", "N")), ENV)
        assert accepts(A, W(X="a#", N="aa"))
        assert not accepts(A, W(X="a", N="aa"))   # X is not a sequence

    @pytest.mark.parametrize("f", [
        conj(Pred("len", "Y", "M"), Pred("rest", "X", "Y")),
        And(Pred("dec", "M", "N"), Not(Pred("zero", "M"))),
        Or(Pred("size", "X", "N"), Not(Pred("len", "X", "N"))),
        conj(Pred("rest", "X", "Y"), Not(Pred("len", "X", "N"))),
    ], ids=["len-rest", "dec-notzero", "or", "rest-notlen"])
    def test_lemma_complete_formulas_are_exact(self, f):
        assert lemma_complete(f)
        assert enumerate_language(compile(f, ENV), 3) == models(f, 3)

    def test_two_shared_variables_under_approximate(self):
        f = And(Pred("len", "X", "N"), Not(Pred("size", "X", "N")))
        got = enumerate_language(compile(f, ENV), 3)
        assert got <= models(f, 3)

    def test_delay_override_on_and_node(self):
        f = And(Pred("len", "X", "N"), Pred("size", "X", "N"), max_delay=2)
        assert enumerate_language(compile(f, ENV), 2) <= models(f, 2)

    def test_two_clause_condition_is_satisfiable(self):
        # (len(Y,M) ∧ rest(X,Y)) ∧ (¬len(X,N) ∨ ¬dec(M,N)): m = 0, y = [], x = [ε], n = 5 works
        f = And(conj(Pred("len", "Y", "M"), Pred("rest", "X", "Y")),
                Or(Not(Pred("len", "X", "N")), Not(Pred("dec", "M", "N"))))
        A = compile(distribute(f), ENV)
        w = witness(A)
        assert w is not None
        assert satisfied_by(f, ENV, w)
        values = {"X": [""], "Y": [], "M": 0, "N": 5}
        assert evaluate(f, ENV, values)
