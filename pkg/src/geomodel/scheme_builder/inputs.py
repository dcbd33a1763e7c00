"""The JSON model description: parsing, validation and canonical serialization."""

import json
from dataclasses import dataclass

from ..errors import InputError, ParseError, UnknownSymbolError
from ..expr import parse_expr, symbols_in, unparse
from ..field_tower.tower import tower_build

__all__ = ["ModelSpec", "parse_model_input", "serialize_model_spec", "load_model_spec"]

_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


@dataclass(frozen=True)
class ModelSpec:
    """Abstract, canonicalized model description.

    Expressions are stored as canonical text (parse then unparse), so two
    specs compare equal exactly when they describe the same input.
    """

    base_transcendentals: tuple
    base_algebraics: tuple  # ((name, min_poly), ...)
    ext_algebraics: tuple
    nice_basis: tuple  # expression texts; empty means "the generators of L over K"
    charts: tuple  # ((name, (generator, ...)), ...)
    overlaps: tuple  # (((first, second), name, (generator, ...)), ...)
    x_charts: tuple = None  # ((name, (generator, ...), over), ...) for a hand-assembled X
    nice_basis_given: bool = True

    def symbols(self):
        return (list(self.base_transcendentals) + [n for n, _ in self.base_algebraics]
                + [n for n, _ in self.ext_algebraics])

    def tower(self):
        return tower_build(self.base_transcendentals,
                           list(self.base_algebraics) + list(self.ext_algebraics),
                           base_mark=len(self.base_algebraics))

    def nice_basis_texts(self):
        if self.nice_basis_given:
            return list(self.nice_basis)
        return [n for n, _ in self.ext_algebraics]

    def to_dict(self):
        out = {
            "base": {
                "transcendentals": list(self.base_transcendentals),
                "algebraics": [{"name": n, "min_poly": p} for n, p in self.base_algebraics],
            },
            "extension": {
                "transcendentals": [],
                "algebraics": [{"name": n, "min_poly": p} for n, p in self.ext_algebraics],
            },
            "cover": {
                "charts": [{"name": n, "generators": list(g)} for n, g in self.charts],
                "overlaps": [
                    {"charts": list(pair), "chart": {"name": n, "generators": list(g)}}
                    for pair, n, g in self.overlaps
                ],
            },
        }
        if self.nice_basis_given:
            out["nice_basis"] = list(self.nice_basis)
        if self.x_charts is not None:
            out["x_cover"] = {"charts": [
                {"name": n, "generators": list(g), "over": over} for n, g, over in self.x_charts
            ]}
        return out


def serialize_model_spec(spec):
    return json.dumps(spec.to_dict(), indent=2, sort_keys=True) + "\n"


class _Reader:
    def __init__(self, text):
        self.text = text

    def line_of(self, value):
        """Line of the first occurrence of a JSON string literal, if any."""
        idx = self.text.find(json.dumps(value))
        if idx < 0:
            idx = self.text.find(value)
        return None if idx < 0 else self.text.count("\n", 0, idx) + 1

    def expr(self, value, path, allowed):
        if not isinstance(value, str):
            raise InputError(f"{path}: expected an expression string, got {type(value).__name__}")
        try:
            node = parse_expr(value, where=path)
        except ParseError as exc:
            msg = str(exc).split(" (")[0]
            raise ParseError(msg, column=exc.column, line=self.line_of(value), where=path) from None
        unknown = sorted(symbols_in(node) - set(allowed))
        if unknown:
            raise UnknownSymbolError(
                f"{path}: unknown symbol(s) {', '.join(unknown)}"
                + (f" (line {self.line_of(value)})" if self.line_of(value) else ""))
        return unparse(node)


def _obj(value, path, keys=None, required=()):
    if not isinstance(value, dict):
        raise InputError(f"{path}: expected an object")
    if keys is not None:
        extra = sorted(set(value) - set(keys))
        if extra:
            raise InputError(f"{path}: unexpected key(s) {', '.join(extra)}")
    for k in required:
        if k not in value:
            raise InputError(f"{path}: missing key {k!r}")
    return value


def _list(value, path):
    if not isinstance(value, list):
        raise InputError(f"{path}: expected a list")
    return value


def _name(value, path):
    if (not isinstance(value, str) or not value or not value[0].isalpha()
            or not set(value) <= _NAME_CHARS):
        raise InputError(f"{path}: {value!r} is not a valid symbol name")
    return value


def _field_part(rd, value, path, known):
    _obj(value, path, keys=("transcendentals", "algebraics"))
    trans = [_name(v, f"{path}.transcendentals[{i}]")
             for i, v in enumerate(_list(value.get("transcendentals", []), f"{path}.transcendentals"))]
    algs = []
    names = list(known) + trans
    for i, item in enumerate(_list(value.get("algebraics", []), f"{path}.algebraics")):
        p = f"{path}.algebraics[{i}]"
        _obj(item, p, keys=("name", "min_poly"), required=("name", "min_poly"))
        name = _name(item["name"], f"{p}.name")
        if name in names:
            raise InputError(f"{p}.name: duplicate symbol {name!r}")
        text = rd.expr(item["min_poly"], f"{p}.min_poly", names + [name])
        algs.append((name, text))
        names.append(name)
    return trans, algs


def parse_model_input(text):
    """Parse and validate a model description (JSON text) into a ModelSpec."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", column=exc.colno, line=exc.lineno,
                         where="input") from None
    rd = _Reader(text)
    _obj(data, "input", keys=("base", "extension", "nice_basis", "cover", "x_cover"),
         required=("base", "extension", "cover"))
    btrans, balgs = _field_part(rd, data["base"], "base", [])
    known = btrans + [n for n, _ in balgs]
    etrans, ealgs = _field_part(rd, data["extension"], "extension", known)
    if etrans:
        raise InputError(
            "extension: transcendental generators make Gal(L/K) infinite; only finite L/K is supported")
    allsyms = known + [n for n, _ in ealgs]

    given = "nice_basis" in data
    nice = tuple(rd.expr(v, f"nice_basis[{i}]", allsyms)
                 for i, v in enumerate(_list(data.get("nice_basis", []), "nice_basis")))

    cover = _obj(data["cover"], "cover", keys=("charts", "overlaps"), required=("charts",))
    seen = set()

    def chart(obj, path):
        _obj(obj, path, keys=("name", "generators"), required=("name", "generators"))
        name = _name(obj["name"], f"{path}.name")
        if name in seen:
            raise InputError(f"{path}.name: duplicate chart name {name!r}")
        seen.add(name)
        gens = tuple(rd.expr(g, f"{path}.generators[{i}]", allsyms)
                     for i, g in enumerate(_list(obj["generators"], f"{path}.generators")))
        return name, gens

    charts = tuple(chart(c, f"cover.charts[{i}]")
                   for i, c in enumerate(_list(cover["charts"], "cover.charts")))
    if not charts:
        raise InputError("cover.charts: at least one chart is required")
    main = {n for n, _ in charts}
    overlaps = []
    for i, o in enumerate(_list(cover.get("overlaps", []), "cover.overlaps")):
        p = f"cover.overlaps[{i}]"
        _obj(o, p, keys=("charts", "chart"), required=("charts", "chart"))
        pair = _list(o["charts"], f"{p}.charts")
        if len(pair) != 2 or any(c not in main for c in pair) or pair[0] == pair[1]:
            raise InputError(f"{p}.charts: expected two distinct names of declared charts")
        name, gens = chart(o["chart"], f"{p}.chart")
        overlaps.append(((pair[0], pair[1]), name, gens))

    x_charts = None
    if "x_cover" in data:
        xc = _obj(data["x_cover"], "x_cover", keys=("charts",), required=("charts",))
        xs = []
        xseen = set()
        targets = main | {n for _, n, _ in overlaps}
        for i, c in enumerate(_list(xc["charts"], "x_cover.charts")):
            p = f"x_cover.charts[{i}]"
            _obj(c, p, keys=("name", "generators", "over"), required=("name", "generators", "over"))
            name = _name(c["name"], f"{p}.name")
            if name in xseen:
                raise InputError(f"{p}.name: duplicate chart name {name!r}")
            xseen.add(name)
            if c["over"] not in targets:
                raise InputError(f"{p}.over: {c['over']!r} is not a chart of the cover")
            gens = tuple(rd.expr(g, f"{p}.generators[{j}]", allsyms)
                         for j, g in enumerate(_list(c["generators"], f"{p}.generators")))
            xs.append((name, gens, c["over"]))
        if not xs:
            raise InputError("x_cover.charts: at least one chart is required")
        x_charts = tuple(xs)

    return ModelSpec(tuple(btrans), tuple(balgs), tuple(ealgs), nice, charts, tuple(overlaps),
                     x_charts, given)


def load_model_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not valid UTF-8: {exc.reason}") from None
    return parse_model_input(text)
