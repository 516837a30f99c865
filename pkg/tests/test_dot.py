from ssgboca.boca import BocaAutomaton, BocaTransition
from ssgboca.csa import CsaTransition
from ssgboca.dot import boca_to_dot, csa_label, csa_to_dot
from ssgboca.ssg import SsgInstance
from ssgboca.ssg2csa import build_base_automaton, build_full_automaton


def find(aut, src, dst):
    return next(t for t in aut.transitions if t.source == src and t.target == dst)


def test_labels_n2():
    aut = build_base_automaton(2)
    assert csa_label(find(aut, "r'2", "r2"), omit_zero_tests=True) == "c7 = 1\nR(c7, c8)"
    assert csa_label(find(aut, "r'2", "r2")) == "c7 = 1, c8 = 0, c9 = 0\nR(c7, c8)"
    full = build_full_automaton(SsgInstance(((3, 1, 1, 1), (1, 1, 1, 1)), 2))[0]
    assert csa_label(find(full, "u1", "e1")) == "c1 + 1, c9 + 3"
    assert csa_label(find(full, "w1", "w2")) == "c9 = 2\nR(c9)"


def test_empty_label():
    assert csa_label(CsaTransition("p", "q", {}, (0, 0))) == ""


def test_csa_dot_structure():
    aut = build_base_automaton(1)
    text = csa_to_dot(aut, omit_zero_tests=True)
    assert text.startswith("digraph csa {") and text.endswith("}\n")
    assert '"t" [shape=doublecircle];' in text
    assert '__start -> "u1";' in text
    assert text.count(" -> ") == len(aut.transitions) + 1
    assert '"r\'1" -> "r1" [label="c3 = 1\\nR(c3, c4)"];' in text


def test_boca_dot():
    aut = BocaAutomaton(("p", "q"), 9, (BocaTransition("p", "q", -3, 3, 9),), "p")
    text = boca_to_dot(aut)
    assert '"p" -> "q" [label="-3 [3, 9]"];' in text
