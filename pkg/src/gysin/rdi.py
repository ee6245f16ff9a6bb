"""Morphism expressions in R, I, D and their normal form as sums of R_f o D_a o I_g.

Concrete syntax (composition is right to left, ``f*g`` means f o g)::

    expr   := term ("+" term)*
    term   := [int "*"] factor ("*" factor)*  |  "0"
    factor := "R(" id ")" | "I(" id ")" | "D(" id ")" | "id(" id ")" | "(" expr ")"

``R`` and ``I`` take map names, ``D`` an element name and ``id`` an object
name, all looked up in an :class:`Env`.  The literal ``0`` is the zero
morphism; its endpoints are taken from the surrounding expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from gysin import gset
from gysin.correspondence import (Correspondence, compose, identity, lift_d, lift_i,
                                  lift_r, zero_corr)
from gysin.errors import InvalidArgument


class ExprError(InvalidArgument):
    """Parse or elaboration error; ``pos`` is a 0-based offset into ``text`` or None."""

    def __init__(self, message, text=None, pos=None):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def render(self):
        if self.text is None or self.pos is None:
            return self.message
        return f"{self.message} at position {self.pos}\n  {self.text}\n  {' ' * self.pos}^"


class ParseError(ExprError):
    pass


class UnknownIdentifier(ExprError):
    pass


class ComposabilityError(ExprError):
    pass


# -- environment -------------------------------------------------------------------

@dataclass
class Env:
    """Named objects, maps and elements an expression may refer to."""

    objects: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)

    def add_object(self, name, X):
        self.objects[name] = X
        return X

    def add_map(self, name, f):
        self.maps[name] = f
        return f

    def add_element(self, name, a):
        self.elements[name] = a
        return a

    def name_of(self, X):
        for name, Y in self.objects.items():
            if Y == X:
                return name
        return f"<{X.size}-point set>"


# -- AST ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    kind: str  # "R", "I", "D" or "id"
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Zero:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Comp:
    """factors[0] o factors[1] o ... ."""

    factors: tuple
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (int, expr)
    pos: int = field(default=0, compare=False)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+*()]))")


def _tokenize(text):
    toks, i = [], 0
    while True:
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            rest = text[i:]
            if rest.strip():
                pos = i + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            break
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        i = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def expect(self, value):
        t = self.peek()
        if t[1] != value or t[0] == "end":
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise self.error(f"expected {value!r}, found {what}")
        return self.next()

    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        pos = self.peek()[2]
        terms = [self.term()]
        while self.peek()[1] == "+":
            self.next()
            terms.append(self.term())
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms), pos)

    def term(self):
        t = self.peek()
        coeff = 1
        if t[0] == "int":
            self.next()
            if self.peek()[1] != "*":
                if int(t[1]) == 0:
                    return (1, Zero(t[2]))
                raise self.error("expected '*' after coefficient")
            self.next()
            coeff = int(t[1])
        pos = self.peek()[2]
        factors = [self.factor()]
        while self.peek()[1] == "*":
            self.next()
            factors.append(self.factor())
        e = factors[0] if len(factors) == 1 else Comp(tuple(factors), pos)
        return (coeff, e)

    def factor(self):
        t = self.peek()
        if t[1] == "(" and t[0] == "op":
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        if t[0] == "id" and t[1] in ("R", "I", "D", "id"):
            self.next()
            self.expect("(")
            name = self.peek()
            if name[0] != "id":
                raise self.error("expected an identifier")
            self.next()
            self.expect(")")
            return Atom(t[1], name[1], name[2])
        what = "end of input" if t[0] == "end" else repr(t[1])
        raise self.error(f"expected R(, I(, D(, id( or '(', found {what}")


def parse_expr(text, env=None):
    """Parse ``text``; if ``env`` is given, also check names and composability."""
    e = _Parser(text).parse()
    if env is not None:
        elaborate(e, env, text)
    return e


# -- elaboration ---------------------------------------------------------------------

def _atom_type(a, env, text):
    if a.kind in ("R", "I"):
        f = env.maps.get(a.name)
        if f is None:
            raise UnknownIdentifier(f"unknown map {a.name!r}", text, a.pos)
        return (f.src, f.dst) if a.kind == "R" else (f.dst, f.src)
    if a.kind == "D":
        x = env.elements.get(a.name)
        if x is None:
            raise UnknownIdentifier(f"unknown element {a.name!r}", text, a.pos)
        return x.base, x.base
    X = env.objects.get(a.name)
    if X is None:
        raise UnknownIdentifier(f"unknown object {a.name!r}", text, a.pos)
    return X, X


def elaborate(e, env, text=None, want=None):
    """(dom, cod) of ``e``; ``want`` fixes the endpoints of bare zeros.

    Either endpoint may come back None when only zeros pin it down.
    """
    if isinstance(e, Atom):
        return _atom_type(e, env, text)
    if isinstance(e, Zero):
        return want if want is not None else (None, None)
    if isinstance(e, Sum):
        dom = cod = None
        types = [elaborate(t, env, text) for _, t in e.terms]
        for (_, t), (d, c) in zip(e.terms, types):
            if d is not None and dom is not None and d != dom:
                raise ComposabilityError(
                    f"summands have different sources {env.name_of(dom)} and {env.name_of(d)}",
                    text, _pos(t))
            if c is not None and cod is not None and c != cod:
                raise ComposabilityError(
                    f"summands have different targets {env.name_of(cod)} and {env.name_of(c)}",
                    text, _pos(t))
            dom = dom or d
            cod = cod or c
        if want is not None:
            dom, cod = dom or want[0], cod or want[1]
        return dom, cod
    # composition, right to left
    types = [elaborate(t, env, text) for t in e.factors]
    for k in range(len(types) - 1):
        left_dom = types[k][0]
        right_cod = types[k + 1][1]
        if left_dom is not None and right_cod is not None and left_dom != right_cod:
            raise ComposabilityError(
                f"cannot compose: {env.name_of(right_cod)} (target of the right factor) "
                f"!= {env.name_of(left_dom)} (source of the left factor)",
                text, _pos(e.factors[k + 1]))
    dom, cod = types[-1][0], types[0][1]
    if want is not None:
        dom, cod = dom or want[0], cod or want[1]
    return dom, cod


def _pos(e):
    return getattr(e, "pos", None)


# -- direct evaluation ---------------------------------------------------------------

def eval_expr(e, E, env, want=None):
    """Evaluate ``e`` in the category of E-correspondences by composing and adding."""
    dom, cod = elaborate(e, env, want=want)
    if dom is None or cod is None:
        raise ComposabilityError("cannot infer the endpoints of 0")
    return _eval(e, E, env, dom, cod)


def _eval(e, E, env, dom, cod):
    if isinstance(e, Zero):
        return zero_corr(E, dom, cod)
    if isinstance(e, Atom):
        if e.kind == "R":
            return lift_r(E, env.maps[e.name])
        if e.kind == "I":
            return lift_i(E, env.maps[e.name])
        if e.kind == "D":
            return lift_d(E, env.elements[e.name])
        return identity(E, env.objects[e.name])
    if isinstance(e, Sum):
        total = zero_corr(E, dom, cod)
        for c, t in e.terms:
            total = total + c * _eval(t, E, env, dom, cod)
        return total
    # endpoints of inner factors: known from elaboration except around zeros
    types = [elaborate(t, env) for t in e.factors]
    result = None
    for k in range(len(e.factors) - 1, -1, -1):
        d, c = types[k]
        d = d or (types[k + 1][1] if k + 1 < len(types) else dom)
        c = c or (types[k - 1][0] if k > 0 else cod)
        if d is None or c is None:
            raise ComposabilityError("cannot infer the endpoints of 0")
        val = _eval(e.factors[k], E, env, d, c)
        result = val if result is None else compose(val, result)
    return result


# -- normal form ---------------------------------------------------------------------

@dataclass
class Term:
    """coeff * R_f o D_a o I_g with f: Z -> Y, a in E(Z), g: Z -> X."""

    coeff: int
    f: object
    a: object
    g: object

    @property
    def span(self):
        return self.f.src

    def value(self, E):
        """((f, g): Z -> Y x X)_!(a), the triple formula."""
        return self.coeff * E.pushforward(gset.pairing(self.f, self.g), self.a)

    def as_corr(self, E):
        """The same term computed by composing R_f, D_a and I_g."""
        return self.coeff * compose(lift_r(E, self.f), compose(lift_d(E, self.a), lift_i(E, self.g)))


@dataclass
class NormalForm:
    dom: object
    cod: object
    terms: list

    def evaluate(self, E, route="triple"):
        """Sum of the terms; ``route`` is "triple" (pushforward) or "compose"."""
        total = zero_corr(E, self.dom, self.cod)
        for t in self.terms:
            if route == "triple":
                total = total + Correspondence(E, self.dom, self.cod, t.value(E))
            else:
                total = total + t.as_corr(E)
        return total

    def signature(self):
        """Hashable description of the term list, for determinism checks."""
        return tuple((t.coeff, t.f, t.g, t.a) for t in self.terms)

    def __len__(self):
        return len(self.terms)


def _atom_terms(e, E, env):
    if e.kind == "R":
        f = env.maps[e.name]
        return [Term(1, f, E.one(f.src), gset.identity_map(f.src))]
    if e.kind == "I":
        f = env.maps[e.name]
        return [Term(1, gset.identity_map(f.src), E.one(f.src), f)]
    if e.kind == "D":
        a = env.elements[e.name]
        idX = gset.identity_map(a.base)
        return [Term(1, idX, a, idX)]
    X = env.objects[e.name]
    idX = gset.identity_map(X)
    return [Term(1, idX, E.one(X), idX)]


def _compose_terms(E, left, right):
    """(R_f D_a I_g) o (R_f' D_a' I_g') as a list of terms.

    I_g o R_f' = R_s o I_t over the pullback P of g and f', one summand per
    orbit of P; then D_a R_s = R_s D(s^* a), I_t D_a' = D(t^* a') I_t and
    adjacent R's and I's merge.
    """
    P, s, t = gset.pullback_gset(left.g, right.f)
    out = []
    if P.size == 0:
        return out
    a = E.pullback(s, left.a) * E.pullback(t, right.a)
    for _, inc in gset.orbit_decompose(P):
        out.append(Term(left.coeff * right.coeff, left.f @ s @ inc, E.pullback(inc, a),
                        right.g @ t @ inc))
    return out


def _apply_rule_d(E, term):
    """R_f D_a I_f = D(f_! a)."""
    if term.f != term.g:
        return term
    Y = term.f.dst
    idY = gset.identity_map(Y)
    return Term(term.coeff, idY, E.pushforward(term.f, term.a), idY)


def _merge(E, terms):
    """Combine terms with the same span, dropping zeros; keeps first-seen order."""
    merged = {}
    for t in terms:
        key = (t.f, t.g)
        val = t.a * t.coeff
        merged[key] = merged[key] + val if key in merged else val
    return [Term(1, f, a, g) for (f, g), a in merged.items() if a != E.zero(f.src)]


def normalize(e, E, env, rule_d=True, want=None):
    """Rewrite ``e`` into a sum of terms R_f o D_a o I_g.

    Sums are expanded by bilinearity; a composite word is folded from the
    left, each step resolving the single I-R inversion between two triples
    by a pullback.  With ``rule_d`` terms of the form R_f D_a I_f are
    collapsed to D(f_! a).
    """
    dom, cod = elaborate(e, env, want=want)
    if dom is None or cod is None:
        raise ComposabilityError("cannot infer the endpoints of 0")
    terms = _normal_terms(e, E, env, rule_d)
    return NormalForm(dom, cod, _merge(E, terms))


def _normal_terms(e, E, env, rule_d):
    if isinstance(e, Zero):
        return []
    if isinstance(e, Atom):
        return _atom_terms(e, E, env)
    if isinstance(e, Sum):
        out = []
        for c, t in e.terms:
            for term in _normal_terms(t, E, env, rule_d):
                out.append(Term(c * term.coeff, term.f, term.a, term.g))
        return out
    acc = _normal_terms(e.factors[0], E, env, rule_d)
    for factor in e.factors[1:]:
        right = _normal_terms(factor, E, env, rule_d)
        acc = [t for l in acc for r in right for t in _compose_terms(E, l, r)]
        if rule_d:
            acc = [_apply_rule_d(E, t) for t in acc]
        acc = _merge(E, acc)
    return acc


def expr_equal(e1, e2, E, env):
    """Semantic equality: both sides evaluated in the correspondence category."""
    t1, t2 = elaborate(e1, env), elaborate(e2, env)
    dom = t1[0] or t2[0]
    cod = t1[1] or t2[1]
    for (d, c) in (t1, t2):
        if (d is not None and d != dom) or (c is not None and c != cod):
            raise InvalidArgument("expressions have different endpoints")
    if dom is None or cod is None:
        return True  # 0 == 0
    return eval_expr(e1, E, env, want=(dom, cod)) == eval_expr(e2, E, env, want=(dom, cod))


def tautological_form(c):
    """c = R(pi_1) o D(c) o I(pi_2) over the product cod x dom."""
    P, p1, p2 = gset.product_gset(c.cod, c.dom)
    return NormalForm(c.dom, c.cod, [Term(1, p1, c.elem, p2)])


def format_expr(e):
    if isinstance(e, Zero):
        return "0"
    if isinstance(e, Atom):
        return f"{e.kind}({e.name})"
    if isinstance(e, Comp):
        return "*".join(_paren(f) for f in e.factors)
    return " + ".join(format_expr(t) if c == 1 else f"{c}*{_paren(t)}" for c, t in e.terms)


def _paren(e):
    return f"({format_expr(e)})" if isinstance(e, Sum) else format_expr(e)


# -- random expressions ----------------------------------------------------------------

class ExprGenerator:
    """Random well-typed expressions over a fixed environment."""

    def __init__(self, env, rng):
        self.env = env
        self.rng = rng
        self.objects = list(env.objects.values())

    def _atoms_from(self, X):
        """Atoms whose source is X, with their targets."""
        out = [(Atom("id", self.env.name_of(X)), X)] if self.env.name_of(X) in self.env.objects else []
        for name, f in self.env.maps.items():
            if f.src == X:
                out.append((Atom("R", name), f.dst))
            if f.dst == X:
                out.append((Atom("I", name), f.src))
        for name, a in self.env.elements.items():
            if a.base == X:
                out.append((Atom("D", name), X))
        return out

    def chain(self, X, length):
        """A random composable word starting at X; returns (factors right to left, target)."""
        factors, cur = [], X
        for _ in range(length):
            opts = self._atoms_from(cur)
            if not opts:
                break
            atom, cur = self.rng.choice(opts)
            factors.append(atom)
        return factors[::-1], cur

    def expr(self, X=None, depth=5):
        """(expression, source, target)."""
        rng = self.rng
        X = X if X is not None else rng.choice(self.objects)
        if depth <= 1 or rng.random() < 0.3:
            factors, Y = self.chain(X, rng.randint(1, 4))
            if not factors:
                return Atom("id", self.env.name_of(X)), X, X
            e = factors[0] if len(factors) == 1 else Comp(tuple(factors))
            return e, X, Y
        if rng.random() < 0.5:
            # composite of sub-expressions
            inner, _, Y = self.expr(X, depth - 1)
            outer, _, Z = self.expr(Y, depth - 1)
            return Comp((outer, inner)), X, Z
        # sum: second summand must land in the same target
        first, _, Y = self.expr(X, depth - 1)
        terms = [(rng.randint(1, 3), first)]
        for _ in range(10):
            cand, _, Y2 = self.expr(X, depth - 1)
            if Y2 == Y:
                terms.append((rng.randint(1, 3), cand))
                break
        else:
            ds = [Atom("D", n) for n, a in self.env.elements.items() if a.base == Y]
            if ds:
                terms.append((rng.randint(1, 3), Comp((rng.choice(ds), first))))
        if len(terms) == 1:
            return first, X, Y
        return Sum(tuple(terms)), X, Y
