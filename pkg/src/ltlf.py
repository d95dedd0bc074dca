"""
LTLf formulas over finite traces: parsing, progression and DFA compilation.
Letters are subsets of an ordered AP list, encoded as bitmasks.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import CapacityError, LtlfSyntaxError

logger = logging.getLogger(__name__)

Letter = Union[int, Iterable[str]]


class Formula:
    """Base class of the LTLf abstract syntax tree."""

    def __and__(self, other: "Formula") -> "Formula":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Formula":
        return Or((self, other))

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TrueF(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FalseF(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def __str__(self):
        return "!" + _wrap(self.arg)


@dataclass(frozen=True)
class And(Formula):
    args: Tuple[Formula, ...]

    def __str__(self):
        return " & ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Or(Formula):
    args: Tuple[Formula, ...]

    def __str__(self):
        return " | ".join(_wrap(a) for a in self.args)


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula

    def __str__(self):
        return "X " + _wrap(self.arg)


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"{_wrap(self.left)} U {_wrap(self.right)}"


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula

    def __str__(self):
        return "F " + _wrap(self.arg)


@dataclass(frozen=True)
class Always(Formula):
    arg: Formula

    def __str__(self):
        return "G " + _wrap(self.arg)


TRUE = TrueF()
FALSE = FalseF()


def _wrap(f: Formula) -> str:
    if isinstance(f, (And, Or, Until)):
        return f"({f})"
    return str(f)


def atoms(f: Formula) -> FrozenSet[str]:
    """Atom names occurring in a formula."""
    if isinstance(f, Atom):
        return frozenset([f.name])
    if isinstance(f, (Not, Next, Eventually, Always)):
        return atoms(f.arg)
    if isinstance(f, (And, Or)):
        result = frozenset()
        for a in f.args:
            result |= atoms(a)
        return result
    if isinstance(f, Until):
        return atoms(f.left) | atoms(f.right)
    return frozenset()


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_KEYWORDS = {"X", "F", "G", "U", "true", "false"}
_SYMBOLS = "()!&|"


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _SYMBOLS:
            tokens.append((ch, i))
            i += 1
        elif ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append((text[start:i], start))
        else:
            raise LtlfSyntaxError(f"unknown token {ch!r}", i, text)
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[str]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def where(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text)

    def error(self, message: str):
        if self.peek() is None:
            message += " at end of input"
        raise LtlfSyntaxError(message, self.where(), self.text)

    def take(self) -> str:
        token = self.tokens[self.pos][0]
        self.pos += 1
        return token

    def parse(self) -> Formula:
        f = self.until()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()!r}")
        return f

    def until(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "U":
            self.take()
            return Until(left, self.until())
        return left

    def disjunction(self) -> Formula:
        args = [self.conjunction()]
        while self.peek() == "|":
            self.take()
            args.append(self.conjunction())
        return _flat(Or, args)

    def conjunction(self) -> Formula:
        args = [self.unary()]
        while self.peek() == "&":
            self.take()
            args.append(self.unary())
        return _flat(And, args)

    def unary(self) -> Formula:
        token = self.peek()
        if token == "!":
            self.take()
            return Not(self.unary())
        if token == "X":
            self.take()
            return Next(self.unary())
        if token == "F":
            self.take()
            return Eventually(self.unary())
        if token == "G":
            self.take()
            return Always(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        token = self.peek()
        if token is None:
            self.error("expected a formula")
        if token == "(":
            self.take()
            f = self.until()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return f
        if token == "true":
            self.take()
            return TRUE
        if token == "false":
            self.take()
            return FALSE
        if token in _KEYWORDS or token in _SYMBOLS:
            self.error(f"unexpected token {token!r}")
        self.take()
        return Atom(token)


def _flat(kind, args: List[Formula]) -> Formula:
    if len(args) == 1:
        return args[0]
    flat = []
    for a in args:
        if isinstance(a, kind):
            flat.extend(a.args)
        else:
            flat.append(a)
    return kind(tuple(flat))


def parse_ltlf(text: str) -> Formula:
    """
    Parse LTLf concrete syntax.

    Precedence from loosest to tightest: U (right associative), |, &,
    unary ! X F G, atoms and parentheses.

    Args:
        text: Formula text

    Returns:
        The formula AST
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Propositional canonicalization
# ---------------------------------------------------------------------------

Literal = Tuple[bool, Formula]
Cube = FrozenSet[Literal]


def _dnf(f: Formula) -> FrozenSet[Cube]:
    if isinstance(f, TrueF):
        return frozenset([frozenset()])
    if isinstance(f, FalseF):
        return frozenset()
    if isinstance(f, Or):
        result = set()
        for a in f.args:
            result |= _dnf(a)
        return frozenset(result)
    if isinstance(f, And):
        result = {frozenset()}
        for a in f.args:
            result = {c | d for c in result for d in _dnf(a)}
        return frozenset(result)
    if isinstance(f, Not):
        return _dnf_negated(f.arg)
    return frozenset([frozenset([(True, f)])])


def _dnf_negated(f: Formula) -> FrozenSet[Cube]:
    if isinstance(f, Not):
        return _dnf(f.arg)
    if isinstance(f, TrueF):
        return _dnf(FALSE)
    if isinstance(f, FalseF):
        return _dnf(TRUE)
    if isinstance(f, And):
        result = set()
        for a in f.args:
            result |= _dnf_negated(a)
        return frozenset(result)
    if isinstance(f, Or):
        result = {frozenset()}
        for a in f.args:
            result = {c | d for c in result for d in _dnf_negated(a)}
        return frozenset(result)
    return frozenset([frozenset([(False, f)])])


def _literal_formula(literal: Literal) -> Formula:
    positive, leaf = literal
    return leaf if positive else Not(leaf)


def simplify(f: Formula) -> Formula:
    """
    Canonical propositional form: a sorted disjunction of sorted conjunctions
    of temporal literals, with contradictions and absorbed cubes removed.
    """
    cubes = []
    for cube in _dnf(f):
        if any((not positive, leaf) in cube for positive, leaf in cube):
            continue
        cubes.append(cube)
    kept = [c for c in cubes if not any(d < c for d in cubes)]
    if not kept:
        return FALSE
    if any(not c for c in kept):
        return TRUE
    terms = []
    for cube in kept:
        literals = sorted((_literal_formula(l) for l in cube), key=str)
        terms.append(literals[0] if len(literals) == 1 else And(tuple(literals)))
    terms.sort(key=str)
    return terms[0] if len(terms) == 1 else Or(tuple(terms))


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------

def _progress(f: Formula, letter: FrozenSet[str]) -> Formula:
    if isinstance(f, Atom):
        return TRUE if f.name in letter else FALSE
    if isinstance(f, (TrueF, FalseF)):
        return f
    if isinstance(f, Not):
        return Not(_progress(f.arg, letter))
    if isinstance(f, And):
        return And(tuple(_progress(a, letter) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(_progress(a, letter) for a in f.args))
    if isinstance(f, Next):
        return f.arg
    if isinstance(f, Until):
        return Or((_progress(f.right, letter), And((_progress(f.left, letter), f))))
    if isinstance(f, Eventually):
        return Or((_progress(f.arg, letter), f))
    if isinstance(f, Always):
        return And((_progress(f.arg, letter), f))
    raise TypeError(f"not a formula: {f!r}")


def progress(f: Formula, letter: Iterable[str]) -> Formula:
    """
    Residual obligation after consuming one letter.

    For a nonempty remainder w, letter·w satisfies f iff w satisfies the
    returned formula.

    Args:
        f: Formula to progress
        letter: Set of atom names true at the consumed position

    Returns:
        The canonically simplified residual formula
    """
    return simplify(_progress(f, frozenset(letter)))


def holds_on_last(f: Formula, letter: FrozenSet[str]) -> bool:
    """Whether the one-letter word `letter` satisfies f."""
    if isinstance(f, Atom):
        return f.name in letter
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, Not):
        return not holds_on_last(f.arg, letter)
    if isinstance(f, And):
        return all(holds_on_last(a, letter) for a in f.args)
    if isinstance(f, Or):
        return any(holds_on_last(a, letter) for a in f.args)
    if isinstance(f, Next):
        return False
    if isinstance(f, Until):
        return holds_on_last(f.right, letter)
    if isinstance(f, (Eventually, Always)):
        return holds_on_last(f.arg, letter)
    raise TypeError(f"not a formula: {f!r}")


def holds_on_empty(f: Formula) -> bool:
    """Empty-word convention: atoms and Next are false, Always is true."""
    if isinstance(f, (Atom, FalseF, Next)):
        return False
    if isinstance(f, (TrueF, Always)):
        return True
    if isinstance(f, Not):
        return not holds_on_empty(f.arg)
    if isinstance(f, And):
        return all(holds_on_empty(a) for a in f.args)
    if isinstance(f, Or):
        return any(holds_on_empty(a) for a in f.args)
    if isinstance(f, Until):
        return holds_on_empty(f.right)
    if isinstance(f, Eventually):
        return holds_on_empty(f.arg)
    raise TypeError(f"not a formula: {f!r}")


def holds(f: Formula, word: Sequence[Iterable[str]]) -> bool:
    """
    Direct finite-trace semantics, evaluated at the first position.

    Args:
        f: Formula
        word: Sequence of letters, each an iterable of atom names

    Returns:
        True iff the word satisfies f
    """
    trace = [frozenset(letter) for letter in word]
    n = len(trace)
    if n == 0:
        return holds_on_empty(f)
    memo: Dict[Tuple[Formula, int], bool] = {}

    def at(g: Formula, i: int) -> bool:
        key = (g, i)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            value = g.name in trace[i]
        elif isinstance(g, TrueF):
            value = True
        elif isinstance(g, FalseF):
            value = False
        elif isinstance(g, Not):
            value = not at(g.arg, i)
        elif isinstance(g, And):
            value = all(at(a, i) for a in g.args)
        elif isinstance(g, Or):
            value = any(at(a, i) for a in g.args)
        elif isinstance(g, Next):
            value = i + 1 < n and at(g.arg, i + 1)
        elif isinstance(g, Until):
            value = False
            for j in range(i, n):
                if at(g.right, j):
                    value = True
                    break
                if not at(g.left, j):
                    break
        elif isinstance(g, Eventually):
            value = any(at(g.arg, j) for j in range(i, n))
        elif isinstance(g, Always):
            value = all(at(g.arg, j) for j in range(i, n))
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[key] = value
        return value

    return at(f, 0)


# ---------------------------------------------------------------------------
# DFA
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Dfa:
    """
    Complete DFA over the letters 0 .. 2^|ap| - 1.

    delta[q][mask] is the successor of state q on the letter whose bit i is
    set iff ap[i] holds.
    """
    ap: Tuple[str, ...]
    n_states: int
    initial: int
    accepting: FrozenSet[int]
    delta: Tuple[Tuple[int, ...], ...]
    names: Tuple[str, ...] = ()

    @property
    def n_letters(self) -> int:
        return 1 << len(self.ap)

    def step(self, state: int, letter: Letter) -> int:
        return self.delta[state][letter_mask(letter, self.ap)]

    def run(self, word: Sequence[Letter], state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        for letter in word:
            q = self.step(q, letter)
        return q


def letter_mask(letter: Letter, ap: Sequence[str]) -> int:
    """Encode a letter as a bitmask over the ordered AP list."""
    if isinstance(letter, int):
        if letter < 0 or letter >= (1 << len(ap)):
            raise ValueError(f"letter mask {letter} out of range for {len(ap)} propositions")
        return letter
    mask = 0
    for name in letter:
        try:
            mask |= 1 << ap.index(name)
        except ValueError:
            raise ValueError(f"unknown atomic proposition {name!r}") from None
    return mask


def mask_letter(mask: int, ap: Sequence[str]) -> FrozenSet[str]:
    return frozenset(name for i, name in enumerate(ap) if mask >> i & 1)


def ltlf_to_dfa(f: Formula, ap: Sequence[str], minimize: bool = True,
                max_states: int = 10_000) -> Dfa:
    """
    Compile a formula into a complete DFA by progression.

    A state is a pair (residual, flag): the residual is what the rest of the
    word must satisfy and the flag says whether the word read so far already
    satisfies f. Accepting states are those with the flag set.

    Args:
        f: Formula with atoms(f) a subset of ap
        ap: Ordered atomic propositions
        minimize: Apply partition refinement to the reachable automaton
        max_states: Capacity bound on explored states

    Returns:
        The DFA, states numbered in breadth-first order from the initial state
    """
    ap = tuple(ap)
    unknown = atoms(f) - set(ap)
    if unknown:
        raise ValueError(f"formula uses propositions outside AP: {sorted(unknown)}")
    letters = [mask_letter(mask, ap) for mask in range(1 << len(ap))]

    start = (simplify(f), holds_on_empty(f))
    index = {start: 0}
    order = [start]
    rows: List[List[int]] = []
    queue = deque([start])
    residual_cache: Dict[Tuple[Formula, int], Tuple[Formula, bool]] = {}
    while queue:
        residual, _ = queue.popleft()
        row = []
        for mask, letter in enumerate(letters):
            key = (residual, mask)
            if key not in residual_cache:
                residual_cache[key] = (progress(residual, letter), holds_on_last(residual, letter))
            target = residual_cache[key]
            if target not in index:
                if len(order) >= max_states:
                    raise CapacityError(f"DFA for {f}", max_states)
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(row)

    dfa = Dfa(
        ap=ap,
        n_states=len(order),
        initial=0,
        accepting=frozenset(i for i, (_, flag) in enumerate(order) if flag),
        delta=tuple(tuple(r) for r in rows),
        names=tuple(f"{r} [{'acc' if flag else 'rej'}]" for r, flag in order),
    )
    logger.debug("progression automaton for %s has %d states", f, dfa.n_states)
    if minimize:
        dfa = minimize_dfa(dfa)
    logger.info("compiled %s to a %d-state DFA", f, dfa.n_states)
    return dfa


def minimize_dfa(d: Dfa) -> Dfa:
    """
    Moore partition refinement followed by breadth-first renumbering.

    Args:
        d: Complete DFA whose states are all reachable

    Returns:
        The minimal equivalent DFA
    """
    letters = range(d.n_letters)
    block = [1 if q in d.accepting else 0 for q in range(d.n_states)]
    n_blocks = len(set(block))
    while True:
        signature = [(block[q],) + tuple(block[d.delta[q][a]] for a in letters)
                     for q in range(d.n_states)]
        numbering: Dict[tuple, int] = {}
        refined = []
        for q in range(d.n_states):
            numbering.setdefault(signature[q], len(numbering))
            refined.append(numbering[signature[q]])
        block = refined
        if len(numbering) == n_blocks:
            break
        n_blocks = len(numbering)

    representative: Dict[int, int] = {}
    for q in range(d.n_states):
        representative.setdefault(block[q], q)
    renumber = {block[d.initial]: 0}
    order = [block[d.initial]]
    queue = deque([block[d.initial]])
    while queue:
        b = queue.popleft()
        for a in letters:
            target = block[d.delta[representative[b]][a]]
            if target not in renumber:
                renumber[target] = len(order)
                order.append(target)
                queue.append(target)
    delta = tuple(
        tuple(renumber[block[d.delta[representative[b]][a]]] for a in letters)
        for b in order
    )
    accepting = frozenset(renumber[block[q]] for q in d.accepting)
    names = tuple(d.names[representative[b]] for b in order) if d.names else ()
    return Dfa(ap=d.ap, n_states=len(order), initial=0, accepting=accepting, delta=delta, names=names)


def dfa_accepts(d: Dfa, word: Sequence[Letter]) -> bool:
    """
    Whether the DFA accepts a finite word.

    Args:
        d: The DFA
        word: Letters as atom-name sets or bitmasks; the empty word is allowed

    Returns:
        True iff the run from the initial state ends in an accepting state
    """
    return d.run(word) in d.accepting
