import itertools

import pytest
from hypothesis import given, strategies as st

from bookshelf import (Direction, IllegalMove, PermutationError, Shelf, apply_move,
                       is_sorted, misplaced, parse_shelf, simulate)
from conftest import all_shelves, shelves
from oracles import oracle_move


@pytest.mark.parametrize("text, books", [
    ("3,1,2", (3, 1, 2)),
    ("1", (1,)),
    (" 2 , 1 ", (2, 1)),
])
def test_parse(text, books):
    s = parse_shelf(text)
    assert s.books == books
    assert s.n == len(books)


@pytest.mark.parametrize("text", ["2,2", "", "0,1", "1,3", "a,b", "1,,2"])
def test_parse_rejects(text):
    with pytest.raises(PermutationError):
        parse_shelf(text)


def test_shelf_str_roundtrip():
    assert str(parse_shelf("3,1,2")) == "3,1,2"
    assert parse_shelf("3,1,2")[1] == 3
    assert parse_shelf("3,1,2").position(2) == 3


@pytest.mark.parametrize("books, expected", [
    ((1, 2, 3), True), ((2, 1), False), ((1,), True), ((), True),
])
def test_is_sorted(books, expected):
    assert is_sorted(Shelf(books)) is expected


@pytest.mark.parametrize("books, expected", [
    ((1, 2, 3), []), ((3, 2, 1), [1, 3]), ((3, 1, 2), [1, 2, 3]),
])
def test_misplaced(books, expected):
    assert misplaced(Shelf(books)) == expected


@pytest.mark.parametrize("books, book, after, direction", [
    ((5, 2, 3, 4, 1), 1, (1, 5, 2, 3, 4), Direction.LEFT),
    ((2, 1), 1, (1, 2), Direction.LEFT),
    ((3, 1, 2), 2, (3, 2, 1), Direction.LEFT),
    ((3, 1, 2), 3, (1, 2, 3), Direction.RIGHT),
])
def test_apply_move_examples(books, book, after, direction):
    s2, rec = apply_move(Shelf(books), book)
    assert s2.books == after == oracle_move(books, book)
    assert rec.book == rec.to_pos == book
    assert rec.from_pos == books.index(book) + 1
    assert rec.direction is direction


@pytest.mark.parametrize("books, book", [((1, 2), 1), ((2, 1), 3), ((2, 1), 0)])
def test_apply_move_illegal(books, book):
    with pytest.raises(IllegalMove):
        apply_move(Shelf(books), book)


def test_simulate_examples():
    tr = simulate(Shelf((3, 1, 2)), [2, 1, 2])
    assert tr.final.books == (1, 2, 3) and tr.length == 3 and tr.complete
    assert simulate(Shelf((1, 2)), []).length == 0
    with pytest.raises(IllegalMove) as exc:
        simulate(Shelf((1, 2)), [1])
    assert exc.value.step == 1


def test_simulate_reports_failing_step():
    with pytest.raises(IllegalMove) as exc:
        simulate(Shelf((3, 1, 2)), [2, 1, 1])
    assert exc.value.step == 3


@given(shelves(min_n=2), st.data())
def test_move_properties(s, data):
    legal = misplaced(s)
    if not legal:
        return
    book = data.draw(st.sampled_from(legal))
    s2, rec = apply_move(s, book)
    assert sorted(s2.books) == list(range(1, s.n + 1))
    assert s2[book] == book
    lo, hi = sorted((rec.from_pos, rec.to_pos))
    for p in range(1, s.n + 1):
        if not lo <= p <= hi:
            assert s2[p] == s[p]
    # relative order of the other books is kept
    assert [b for b in s.books if b != book] == [b for b in s2.books if b != book]


@pytest.mark.parametrize("n", range(2, 8))
def test_every_legal_move_exhaustive(n):
    for s in all_shelves(n):
        legal = misplaced(s)
        assert (legal == []) == is_sorted(s)
        for b in legal:
            assert apply_move(s, b)[0].books == oracle_move(s.books, b)


@given(shelves(min_n=2, max_n=10), st.randoms(use_true_random=False))
def test_no_repeat_within_trace(s, rnd):
    seen = {s.books}
    while not is_sorted(s):
        s, _ = apply_move(s, rnd.choice(misplaced(s)))
        assert s.books not in seen
        seen.add(s.books)


def test_shelf_is_immutable():
    s = Shelf((2, 1))
    with pytest.raises(Exception):
        s.books = (1, 2)
    assert apply_move(s, 1)[0] is not s and s.books == (2, 1)


def test_identity_and_empty():
    assert Shelf.identity(4).books == (1, 2, 3, 4)
    assert misplaced(Shelf(())) == []
    assert list(itertools.islice(iter(Shelf((2, 1))), 2)) == [2, 1]
