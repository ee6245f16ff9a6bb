"""Loading environments from JSON and printing results."""

from __future__ import annotations

import json
import re

from gysin import gset
from gysin.burnside import BurnsideElem, BurnsideFunctor
from gysin.correspondence import twisted_coordinates
from gysin.errors import InvalidArgument
from gysin.gw import FiniteFieldGW, RealComplexGW, format_class
from gysin.rdi import Env


def parse_group(spec):
    """'Z/n', 'Zn', 'Cn', 'Sn', '1'/'trivial', {"cyclic": n}, {"symmetric": n} or a table."""
    if isinstance(spec, dict):
        if "cyclic" in spec:
            return gset.cyclic_group(int(spec["cyclic"]))
        if "symmetric" in spec:
            return gset.symmetric_group(int(spec["symmetric"]))
        if "mul" in spec:
            return gset.FiniteGroup.from_json(spec)
        raise InvalidArgument(f"bad group spec {spec!r}")
    s = str(spec).strip()
    if s.lower() in ("1", "trivial", "e"):
        return gset.cyclic_group(1)
    m = re.fullmatch(r"(?:Z/?|C_?|ℤ/)(\d+)", s)
    if m:
        return gset.cyclic_group(int(m.group(1)))
    m = re.fullmatch(r"S_?(\d+)", s)
    if m:
        return gset.symmetric_group(int(m.group(1)))
    raise InvalidArgument(f"unknown group {spec!r} (try Z/8, S3 or 1)")


def make_functor(name, group, p=None):
    """'burnside', 'gw' / 'gw:P' (Z/n-sets, F_P) or 'rc' (Z/2-sets, R and C)."""
    name = name.strip().lower()
    if name == "burnside":
        return BurnsideFunctor(group)
    if name == "rc":
        if group != gset.cyclic_group(2):
            raise InvalidArgument("the rc functor lives on Z/2-sets")
        return RealComplexGW()
    if name == "gw" or name.startswith("gw:"):
        if ":" in name:
            p = int(name.split(":", 1)[1])
        p = 3 if p is None else p
        n = group.order
        if group != gset.cyclic_group(n):
            raise InvalidArgument("the gw functor lives on Z/n-sets")
        return FiniteFieldGW(p, n)
    raise InvalidArgument(f"unknown functor {name!r} (burnside, gw:P or rc)")


def _gset_from_spec(data, group):
    if data.get("terminal"):
        return gset.terminal(group)
    if data.get("regular"):
        return gset.regular_gset(group)
    if "cosets" in data:
        return gset.coset_gset(group, gset.closure(group, data["cosets"]))
    if "orbits" in data:
        X = gset.empty(group)
        for gens in data["orbits"]:
            X = gset.coproduct_gset(X, gset.coset_gset(group, gset.closure(group, gens)))[0]
        return X
    if "act" in data:
        act = data["act"]
        size = data.get("size", len(act[0]) if act else 0)
        return gset.GSet.from_json({"size": size, "act": act}, group)
    raise InvalidArgument("a G-set needs one of terminal, regular, cosets, orbits or act")


class Session:
    """Groups, G-sets, maps and elements by id, as read from an environment file.

    Schema::

        {"groups":   {id: group spec},
         "gsets":    {id: {"group": id, "act" | "regular" | "terminal" | "cosets" | "orbits"}},
         "gmaps":    {id: {"src": id, "dst": id, "table": [...]}},
         "elements": {id: {"object": id, "value": element json}},
         "functor":  optional default functor name}

    ``maps`` is accepted as an alias of ``gmaps``.
    """

    def __init__(self, data, functor=None, p=None):
        if not isinstance(data, dict):
            raise InvalidArgument("environment must be a JSON object")
        self.groups = {k: parse_group(v) for k, v in sorted(data.get("groups", {}).items())}
        self.gsets = {}
        for k, v in data.get("gsets", {}).items():
            gid = v.get("group")
            if gid not in self.groups:
                raise InvalidArgument(f"G-set {k!r} refers to unknown group {gid!r}")
            self.gsets[k] = _gset_from_spec(v, self.groups[gid])
        self.gmaps = {}
        maps = dict(data.get("maps", {}))
        maps.update(data.get("gmaps", {}))
        for k, v in maps.items():
            src, dst = v.get("src"), v.get("dst")
            for ref in (src, dst):
                if ref not in self.gsets:
                    raise InvalidArgument(f"map {k!r} refers to unknown G-set {ref!r}")
            self.gmaps[k] = gset.GMap(self.gsets[src], self.gsets[dst], v["table"])
        used = {X.group for X in self.gsets.values()}
        if len(used) > 1:
            raise InvalidArgument("all G-sets of one environment must share a group")
        group = used.pop() if used else (next(iter(self.groups.values()), None))
        if group is None:
            raise InvalidArgument("environment declares no group")
        self.group = group
        self.functor = make_functor(functor or data.get("functor", "burnside"), group, p)
        self.elements = {}
        for k, v in data.get("elements", {}).items():
            oid = v.get("object")
            if oid not in self.gsets:
                raise InvalidArgument(f"element {k!r} refers to unknown G-set {oid!r}")
            self.elements[k] = self.functor.element_from_json(
                self.gsets[oid], v["value"], resolve=self._resolve)

    def _resolve(self, gid):
        if gid not in self.gsets:
            raise InvalidArgument(f"unknown G-set {gid!r}")
        return self.gsets[gid]

    @classmethod
    def load(cls, path, functor=None, p=None):
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidArgument(f"{path}: invalid JSON: {exc}") from exc
        return cls(data, functor=functor, p=p)

    def env(self):
        env = Env()
        for k, X in self.gsets.items():
            env.add_object(k, X)
        for k, f in self.gmaps.items():
            env.add_map(k, f)
        for k, a in self.elements.items():
            env.add_element(k, a)
        return env

    def gset_id(self, X):
        for k, Y in self.gsets.items():
            if Y == X:
                return k
        return None


# -- pretty printing ----------------------------------------------------------------------

def _cyclic_order(G):
    n = G.order
    return n if G == gset.cyclic_group(n) else None


def sigma_label(s, ascii=False):
    """Name of an automorphism of a transitive Z/n-set: rotation by s(0)."""
    sig = "sigma" if ascii else "σ"
    k = s.table[0]
    if k == 0:
        return "1"
    return sig if k == 1 else f"{sig}^{k}"


def format_elem(E, a, ascii=False):
    if isinstance(a, BurnsideElem):
        return format_burnside(a, ascii=ascii)
    if len(a.components) == 1:
        return format_class(a.components[0], ascii=ascii)
    return E.format_element(a, ascii=ascii)


def format_burnside(a, ascii=False):
    if a.is_zero():
        return "0"
    G = a.base.group
    n = _cyclic_order(G)
    parts = []
    for k, c in a.terms():
        index = G.order // len(k.stab)
        if index == 1:
            name = "*"
        elif n is not None:
            name = f"Z/{index}" if ascii else f"ℤ/{index}"
        else:
            name = f"G/{list(k.stab)}"
        label = f"[{name}]" if a.base.size == 1 else f"[{name}@{k.point}]"
        parts.append(label if c == 1 else f"{c}{label}")
    return " + ".join(parts)


def _scalar(E, a):
    """The integer n with a = n*1, or None."""
    one = E.one(a.base)
    if isinstance(a, BurnsideElem):
        (key, _), = one.terms()
        n = a.coeffs.get(key, 0)
    else:
        first = a.components[0]
        n = getattr(first, "rank", getattr(first, "plus", 0))
    return n if a == one * n else None


def format_corr(c, ascii=False):
    """Human-readable form of a correspondence.

    Endomorphisms of a transitive Z/n-set X with Aut(X) acting simply
    transitively print as sums of a_s * s over automorphisms; everything
    else falls back to the element of E(cod x dom).
    """
    E = c.functor
    X = c.dom
    if (X == c.cod and X.is_transitive() and _cyclic_order(X.group) is not None
            and gset.is_galois(X)):
        parts = []
        coords = twisted_coordinates(E, X, c)
        n_nonzero = sum(1 for _, a in coords if a != E.zero(X))
        for s, a in coords:
            n = _scalar(E, a)
            if n == 0:
                continue
            lab = sigma_label(s, ascii)
            if n is not None:
                if lab == "1":
                    parts.append(str(n))
                else:
                    parts.append(lab if n == 1 else f"{n}{lab}")
            else:
                body = format_elem(E, a, ascii)
                parts.append(body if lab == "1" and n_nonzero == 1 else
                             f"({body})" if lab == "1" else f"{lab}({body})")
        return " + ".join(parts) if parts else "0"
    return format_elem(E, c.elem, ascii)


def corr_to_json(c, session=None):
    dom = session.gset_id(c.dom) if session else None
    cod = session.gset_id(c.cod) if session else None
    return c.to_json(dom, cod)


def term_to_json(E, t):
    return {"coeff": t.coeff, "span": t.f.src.to_json(), "f": list(t.f.table),
            "a": E.element_to_json(t.a), "g": list(t.g.table)}

