"""Boolean events over endogenous variables: AST, parser, renderer, truth.

Grammar (whitespace insignificant)::

    event  := term ('|' term)*
    term   := factor ('&' factor)*
    factor := '!' factor | '(' event ')' | IDENT '=' VALUE

``a | b`` is sugar for ``!(!a & !b)``; the AST only has primitives,
negation and conjunction.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

from .model import CausalModel, ModelError


@dataclass(frozen=True)
class Prim:
    var: str
    value: str


@dataclass(frozen=True)
class Not:
    arg: "Event"


@dataclass(frozen=True)
class And:
    left: "Event"
    right: "Event"


Event = Union[Prim, Not, And]


class EventSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<word>\w+)|(?P<op>[!&|()=]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise EventSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = "word" if m.group("word") else m.group("op")
        tokens.append((kind, m.group(kind if kind == "word" else "op"), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            want = "identifier or value" if kind == "word" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise EventSyntaxError(f"expected {want}, got {got}", self.text, tok[2])
        self.i += 1
        return tok

    def event(self):
        node = self.term()
        while self.peek()[0] == "|":
            self.i += 1
            rhs = self.term()
            node = Not(And(Not(node), Not(rhs)))
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "&":
            self.i += 1
            node = And(node, self.factor())
        return node

    def factor(self):
        kind = self.peek()[0]
        if kind == "!":
            self.i += 1
            return Not(self.factor())
        if kind == "(":
            self.i += 1
            node = self.event()
            self.take(")")
            return node
        name = self.take("word")[1]
        self.take("=")
        value = self.take("word")[1]
        return Prim(name, value)


def parse_event(text: str, model: Optional[CausalModel] = None) -> Event:
    """Parse ``text``; with ``model`` given, also check variables and values."""
    p = _Parser(text)
    node = p.event()
    tok = p.peek()
    if tok[0] != "end":
        raise EventSyntaxError(f"unexpected {tok[1]!r}", text, tok[2])
    if model is not None:
        check_event(node, model)
    return node


def check_event(event: Event, model: CausalModel):
    for prim in primitives(event):
        if not model.is_endogenous(prim.var):
            raise ModelError(f"event refers to unknown endogenous variable {prim.var!r}")
        if prim.value not in model.domain(prim.var):
            raise ModelError(f"value {prim.value!r} not in domain of {prim.var!r}")


def render(event: Event) -> str:
    """Canonical text form; ``parse_event(render(e)) == e``."""
    if isinstance(event, Prim):
        return f"{event.var}={event.value}"
    if isinstance(event, Not):
        inner = render(event.arg)
        return f"!{inner}" if not isinstance(event.arg, And) else f"!({inner})"
    left = render(event.left)
    right = render(event.right)
    if isinstance(event.right, And):
        right = f"({right})"
    return f"{left} & {right}"


def primitives(event: Event):
    stack = [event]
    while stack:
        e = stack.pop()
        if isinstance(e, Prim):
            yield e
        elif isinstance(e, Not):
            stack.append(e.arg)
        else:
            stack.append(e.right)
            stack.append(e.left)


def event_variables(event: Event) -> frozenset:
    return frozenset(p.var for p in primitives(event))


def compile_event(event: Event) -> Callable[[Mapping], bool]:
    """Turn an event into a predicate over a value mapping."""
    if isinstance(event, Prim):
        var, value = event.var, event.value
        return lambda vals: vals[var] == value
    if isinstance(event, Not):
        inner = compile_event(event.arg)
        return lambda vals: not inner(vals)
    left, right = compile_event(event.left), compile_event(event.right)
    return lambda vals: left(vals) and right(vals)


def truth(event: Event, values: Mapping) -> bool:
    if isinstance(event, Prim):
        return values[event.var] == event.value
    if isinstance(event, Not):
        return not truth(event.arg, values)
    return truth(event.left, values) and truth(event.right, values)


def conjunction(assignment: Mapping) -> Event:
    """The event ``X1=x1 & ... & Xn=xn`` (left-nested)."""
    items = list(assignment.items())
    if not items:
        raise ValueError("empty conjunction")
    node = Prim(*items[0])
    for var, value in items[1:]:
        node = And(node, Prim(var, value))
    return node


def holds(model: CausalModel, u: Mapping, event: Event) -> bool:
    """``(M, u) |= event``."""
    check_event(event, model)
    model.check_context(u)
    return truth(event, model.solve(u))


def holds_intervened(model: CausalModel, x: Mapping, u: Mapping, event: Event) -> bool:
    """``(M_x, u) |= event``."""
    check_event(event, model)
    model.check_context(u)
    model.check_assignment(x)
    return truth(event, model.solve(u, x))


def as_event(event: Union[str, Event], model: Optional[CausalModel] = None) -> Event:
    if isinstance(event, str):
        return parse_event(event, model)
    if model is not None:
        check_event(event, model)
    return event
