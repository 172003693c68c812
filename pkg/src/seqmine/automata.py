"""Regular expressions over item names, compiled down to a padded automaton.

The surface syntax treats whitespace-separated words as item names, so the
alphabet is not limited to single characters. The punctuation `. | * + ? (
)` is self-delimiting and needs no surrounding whitespace. `.` matches any
item of the dictionary the expression is compiled against. Postfix
operators bind tightest, then concatenation, then alternation.

Compilation goes expression -> syntax tree -> Thompson automaton -> subset
construction. The resulting deterministic automaton is total over the item
alphabet (with an explicit dead state) and then extended with the padding
symbol: padding moves accepting states into a dedicated accepting sink that
only loops on more padding, and kills every other state. A fixed-length
assignment with a padding suffix is therefore accepted exactly when its
stripped pattern is in the original language.

The nondeterministic automaton can also be run directly (`nfa_accepts`),
which the test oracle uses so the deterministic pipeline is not checked
against itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import EMPTY
from .database import ItemDictionary
from .errors import RegexSyntaxError

_NAME = "name"
_PUNCT = {".": "dot", "|": "pipe", "*": "star", "+": "plus", "?": "opt",
          "(": "lparen", ")": "rparen"}
_END = "end"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(expr: str) -> list[Token]:
    tokens = []
    i = 0
    n = len(expr)
    while i < n:
        c = expr[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            tokens.append(Token(_PUNCT[c], c, i))
            i += 1
            continue
        j = i
        while j < n and not expr[j].isspace() and expr[j] not in _PUNCT:
            j += 1
        tokens.append(Token(_NAME, expr[i:j], i))
        i = j
    tokens.append(Token(_END, "", n))
    return tokens


# -- syntax tree ------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    name: str


@dataclass(frozen=True)
class Any:
    pass


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Alt:
    parts: tuple


@dataclass(frozen=True)
class Star:
    child: object


@dataclass(frozen=True)
class Plus:
    child: object


@dataclass(frozen=True)
class Opt:
    child: object


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        node = self.alternation()
        tok = self.peek()
        if tok.kind != _END:
            raise RegexSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def alternation(self):
        parts = [self.concatenation()]
        while self.peek().kind == "pipe":
            self.take()
            parts.append(self.concatenation())
        return parts[0] if len(parts) == 1 else Alt(tuple(parts))

    def concatenation(self):
        parts = []
        while self.peek().kind in (_NAME, "dot", "lparen"):
            parts.append(self.postfix())
        if not parts:
            tok = self.peek()
            raise RegexSyntaxError("expected an item name, '.', or '('", tok.pos)
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def postfix(self):
        node = self.atom()
        while True:
            kind = self.peek().kind
            if kind == "star":
                self.take()
                node = Star(node)
            elif kind == "plus":
                self.take()
                node = Plus(node)
            elif kind == "opt":
                self.take()
                node = Opt(node)
            else:
                return node

    def atom(self):
        tok = self.take()
        if tok.kind == _NAME:
            return Lit(tok.text)
        if tok.kind == "dot":
            return Any()
        if tok.kind == "lparen":
            node = self.alternation()
            closing = self.take()
            if closing.kind != "rparen":
                raise RegexSyntaxError("unclosed group", tok.pos)
            return node
        raise RegexSyntaxError(f"unexpected {tok.text!r}", tok.pos)


def parse_regex(expr: str):
    """Parse an expression into a syntax tree of names; no dictionary needed yet."""
    return _Parser(tokenize(expr)).parse()


# -- Thompson construction ---------------------------------------------------


class Nfa:
    """Nondeterministic automaton with one start and one accept state.

    `sym[q]` lists `(label, target)` edges where the label is an item id or
    None for any item; `eps[q]` lists plain epsilon targets.
    """

    def __init__(self) -> None:
        self.eps: list[list[int]] = []
        self.sym: list[list[tuple[int | None, int]]] = []
        self.start = 0
        self.accept = 0

    def new_state(self) -> int:
        self.eps.append([])
        self.sym.append([])
        return len(self.eps) - 1

    @property
    def num_states(self) -> int:
        return len(self.eps)


def build_nfa(ast, dictionary: ItemDictionary) -> Nfa:
    """Lower a syntax tree, resolving item names through the dictionary."""
    nfa = Nfa()

    def lower(node) -> tuple[int, int]:
        if isinstance(node, Lit):
            s, t = nfa.new_state(), nfa.new_state()
            nfa.sym[s].append((dictionary.id_of(node.name), t))
            return s, t
        if isinstance(node, Any):
            s, t = nfa.new_state(), nfa.new_state()
            nfa.sym[s].append((None, t))
            return s, t
        if isinstance(node, Concat):
            first_s, prev_t = lower(node.parts[0])
            for part in node.parts[1:]:
                s, t = lower(part)
                nfa.eps[prev_t].append(s)
                prev_t = t
            return first_s, prev_t
        if isinstance(node, Alt):
            s, t = nfa.new_state(), nfa.new_state()
            for part in node.parts:
                ps, pt = lower(part)
                nfa.eps[s].append(ps)
                nfa.eps[pt].append(t)
            return s, t
        if isinstance(node, Star):
            cs, ct = lower(node.child)
            s, t = nfa.new_state(), nfa.new_state()
            nfa.eps[s] += [cs, t]
            nfa.eps[ct] += [cs, t]
            return s, t
        if isinstance(node, Plus):
            cs, ct = lower(node.child)
            s, t = nfa.new_state(), nfa.new_state()
            nfa.eps[s].append(cs)
            nfa.eps[ct] += [cs, t]
            return s, t
        if isinstance(node, Opt):
            cs, ct = lower(node.child)
            s, t = nfa.new_state(), nfa.new_state()
            nfa.eps[s] += [cs, t]
            nfa.eps[ct].append(t)
            return s, t
        raise TypeError(f"unknown syntax node {node!r}")

    nfa.start, nfa.accept = lower(ast)
    return nfa


def _eps_closure(nfa: Nfa, states) -> frozenset[int]:
    seen = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for t in nfa.eps[q]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def nfa_accepts(nfa: Nfa, word) -> bool:
    """Run the automaton directly on a sequence of item ids."""
    current = _eps_closure(nfa, (nfa.start,))
    for item in word:
        moved = [
            t for q in current for label, t in nfa.sym[q]
            if label is None or label == item
        ]
        if not moved:
            return False
        current = _eps_closure(nfa, moved)
    return nfa.accept in current


# -- determinization and padding ---------------------------------------------


class Dfa:
    """Total deterministic automaton over items plus the padding value.

    `table[q][a]` is the item transition, `pad_next[q]` the padding
    transition. `accepting` already includes the padding sink, so a
    fixed-length run accepts exactly when it ends in `accepting`.
    """

    def __init__(
        self,
        num_items: int,
        table: list[list[int]],
        pad_next: list[int],
        accepting: frozenset[int],
        start: int,
        dead: int,
        pad_sink: int,
    ):
        self.num_items = num_items
        self.table = table
        self.pad_next = pad_next
        self.accepting = accepting
        self.start = start
        self.dead = dead
        self.pad_sink = pad_sink

    @property
    def num_states(self) -> int:
        return len(self.table)

    def step(self, state: int, value: int) -> int:
        if value == EMPTY:
            return self.pad_next[state]
        return self.table[state][value]

    def accepts(self, values) -> bool:
        """Run a word of item ids and/or padding values from the start state."""
        q = self.start
        for v in values:
            q = self.step(q, v)
        return q in self.accepting

    def dump(self, item_names=None) -> str:
        """Stable text table of every transition, for debugging and golden tests."""
        names = (
            [str(a) for a in range(self.num_items)]
            if item_names is None
            else list(item_names)
        )
        lines = [
            f"start={self.start} dead={self.dead} pad_sink={self.pad_sink}"
        ]
        for q in range(self.num_states):
            mark = "*" if q in self.accepting else " "
            cells = " ".join(
                f"{names[a]}->{self.table[q][a]}" for a in range(self.num_items)
            )
            lines.append(f"{q}{mark} {cells} #->{self.pad_next[q]}".rstrip())
        return "\n".join(lines)


def determinize(nfa: Nfa, num_items: int) -> Dfa:
    """Subset construction plus the padding extension described above."""
    start_set = _eps_closure(nfa, (nfa.start,))
    index: dict[frozenset[int], int] = {start_set: 0}
    table: list[list[int]] = [[]]
    queue = [start_set]
    while queue:
        subset = queue.pop()
        row = [0] * num_items
        for a in range(num_items):
            moved = [
                t for q in subset for label, t in nfa.sym[q]
                if label is None or label == a
            ]
            nxt = _eps_closure(nfa, moved) if moved else frozenset()
            ni = index.get(nxt)
            if ni is None:
                ni = len(table)
                index[nxt] = ni
                table.append([])
                queue.append(nxt)
            row[a] = ni
        table[index[subset]] = row
    empty = frozenset()
    if empty not in index:
        dead = len(table)
        index[empty] = dead
        table.append([dead] * num_items)
    dead = index[empty]
    accepting = {qi for subset, qi in index.items() if nfa.accept in subset}

    pad_sink = len(table)
    table.append([dead] * num_items)
    pad_next = [pad_sink if q in accepting else dead for q in range(pad_sink)]
    pad_next.append(pad_sink)  # more padding keeps accepting
    accepting.add(pad_sink)
    return Dfa(
        num_items,
        table,
        pad_next,
        frozenset(accepting),
        index[start_set],
        dead,
        pad_sink,
    )


def compile_regex(expr: str, dictionary: ItemDictionary) -> Dfa:
    """Parse, resolve names, determinize, and pad-extend in one call."""
    nfa = build_nfa(parse_regex(expr), dictionary)
    return determinize(nfa, len(dictionary))


def compile_regex_nfa(expr: str, dictionary: ItemDictionary) -> Nfa:
    """The nondeterministic form, for direct simulation."""
    return build_nfa(parse_regex(expr), dictionary)
