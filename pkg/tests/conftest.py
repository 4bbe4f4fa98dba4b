import pytest

from modaltopos import fincat


@pytest.fixture(scope="session")
def arrow_base():
    """The two-object base C -g-> D."""
    return fincat.validate_category(
        "loopbase",
        ["C", "D"],
        [("1_C", "C", "C"), ("1_D", "D", "D"), ("g", "C", "D")],
        {"C": "1_C", "D": "1_D"},
        {},
    )


@pytest.fixture(scope="session")
def chain3_base():
    """Three worlds k0 <= k1 <= k2, reversed into the contravariant base."""
    return fincat.from_preorder(
        "chain3", ["k0", "k1", "k2"],
        [("k0", "k0"), ("k1", "k1"), ("k2", "k2"),
         ("k0", "k1"), ("k1", "k2"), ("k0", "k2")],
        reverse=True)


@pytest.fixture(scope="session")
def diamond_base():
    """The 2x2 poset as a category."""
    elems = ["o00", "o01", "o10", "o11"]
    le = [(a, b) for a in elems for b in elems
          if a[1] <= b[1] and a[2] <= b[2]]
    return fincat.from_preorder("diamond", elems, le)


@pytest.fixture(scope="session")
def loop_G(arrow_base):
    from modaltopos import presheaf
    return presheaf.Presheaf(
        arrow_base, "G",
        {"D": ["u"], "C": ["v", "w"]},
        {"g": {"u": "v"}})
