"""Line-oriented scenario files.

A scenario is a sequence of directives, one per line; ``#`` starts a comment.
Arguments are whitespace separated (outside brackets and quotes) and are either bare
words or ``key=value`` pairs whose value is read as JSON when it parses.

::

    scenario gp-dual-numbers
    modulus 2
    cosmos finvect              # or: cosmos chain -8 8
    seed 0
    category R algebra unit=[1,0] mult=[[[1,0],[0,1]],[[0,1],[0,0]]]
    category Q quiver vertices=["a","b"] edges={"f":["a","b"]}
    category E unit
    category D dual-numbers
    category X explicit objects=["a"]
      hom a a 1
      comp a a a [[1]]
      ident a [1]
    end
    presheaf k on R values={"*":1}
      action * * [[1]] [[0]]    # one matrix per basis arrow of R(*, *)
    end
    check axioms R
    check gabriel-popescu R generators=representables random=50
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .linalg import is_prime

CHECK_KINDS = (
    "axioms", "yoneda", "adjunction", "oracle", "gabriel-popescu", "homomorphism",
    "filtered", "dualizable", "change-of-base", "generators",
)
CATEGORY_KINDS = ("unit", "dual-numbers", "algebra", "quiver", "explicit")
CHECK_ARGS = {
    "axioms": (),
    "yoneda": ("random",),
    "adjunction": ("random", "tensor-x"),
    "oracle": ("random",),
    "gabriel-popescu": ("generators", "random", "filtered"),
    "homomorphism": ("random",),
    "filtered": ("index",),
    "dualizable": ("max-dim",),
    "change-of-base": (),
    "generators": ("generators",),
}
CHECK_CHOICES = {
    "expect": ("pass", "fail"),
    "index": ("cospan", "idempotent", "parallel"),
}
INT_ARGS = ("random", "tensor-x", "max-dim")


class ScenarioError(ValueError):
    """A parse or resolution error pointing at a line and column."""

    def __init__(self, msg: str, line: int = 0, col: int = 0, path: str = "<scenario>"):
        self.line, self.col, self.path = line, col, path
        super().__init__(f"{path}:{line}:{col}: {msg}")


@dataclass
class Token:
    text: str
    col: int


@dataclass
class CategoryDecl:
    name: str
    kind: str
    args: dict
    body: list = field(default_factory=list)   # (line, tokens) for explicit presentations
    line: int = 0


@dataclass
class PresheafDecl:
    name: str
    category: str
    values: dict
    actions: list = field(default_factory=list)   # (c, d, [matrices])
    line: int = 0


@dataclass
class CheckDecl:
    kind: str
    target: str | None
    args: dict
    line: int = 0

    @property
    def label(self) -> str:
        extra = " ".join(f"{k}={v if isinstance(v, str) else json.dumps(v, sort_keys=True)}"
                         for k, v in sorted(self.args.items()))
        return " ".join(x for x in ("check", self.kind, self.target or "", extra) if x)


@dataclass
class Scenario:
    name: str = "scenario"
    modulus: int = 2
    cosmos: str = "finvect"
    bounds: tuple = (-8, 8)
    seed: int = 0
    categories: dict = field(default_factory=dict)
    presheaves: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    path: str = "<scenario>"


def _tokens(line: str, lineno: int, path: str) -> list[Token]:
    """Split on whitespace outside brackets and quotes, keeping 1-based columns."""
    out: list[Token] = []
    buf, start, depth, quote = [], 0, 0, None
    for i, ch in enumerate(line):
        if quote:
            buf.append(ch)
            if ch == quote:
                quote = None
            continue
        if ch == "#" and depth == 0:
            break
        if ch.isspace() and depth == 0:
            if buf:
                out.append(Token("".join(buf), start + 1))
                buf = []
            continue
        if not buf:
            start = i
        if ch in "\"'":
            quote = ch
        elif ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
            if depth < 0:
                raise ScenarioError(f"unbalanced {ch!r}", lineno, i + 1, path)
        buf.append(ch)
    if quote:
        raise ScenarioError("unterminated quote", lineno, len(line), path)
    if depth:
        raise ScenarioError("unbalanced brackets", lineno, len(line), path)
    if buf:
        out.append(Token("".join(buf), start + 1))
    return out


def _value(tok: Token, raw: str, lineno: int, path: str):
    if raw and (raw[0] in "[{\"" or raw[0].isdigit() or raw[0] == "-" or raw in ("true", "false", "null")):
        try:
            return json.loads(raw)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"bad JSON value: {e.msg}", lineno, tok.col + tok.text.find("=") + 1 + e.pos, path) from None
    return raw


def _split_args(toks: list[Token], lineno: int, path: str) -> tuple[list[Token], dict]:
    pos, kw = [], {}
    for t in toks:
        if "=" in t.text and not t.text.startswith("["):
            k, v = t.text.split("=", 1)
            kw[k] = _value(t, v, lineno, path)
        else:
            pos.append(t)
    return pos, kw


def _int(tok: Token, lineno: int, path: str, what: str) -> int:
    try:
        return int(tok.text)
    except ValueError:
        raise ScenarioError(f"{what} must be an integer, got {tok.text!r}", lineno, tok.col, path) from None


def _matrix(tok: Token, lineno: int, path: str):
    try:
        m = json.loads(tok.text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"bad matrix: {e.msg}", lineno, tok.col + e.pos, path) from None
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise ScenarioError("matrix must be a list of rows", lineno, tok.col, path)
    return m


def _check_args(kind: str, toks: list[Token], kw: dict, lineno: int, path: str) -> None:
    cols = {t.text.split("=", 1)[0]: t.col for t in toks if "=" in t.text}
    allowed = CHECK_ARGS[kind] + ("expect",)
    for k, v in kw.items():
        if k not in allowed:
            raise ScenarioError(f"check {kind} takes no argument {k!r}; allowed: {', '.join(allowed)}",
                                lineno, cols[k], path)
        if k in CHECK_CHOICES and v not in CHECK_CHOICES[k]:
            raise ScenarioError(f"{k} must be one of {', '.join(CHECK_CHOICES[k])}, got {v!r}", lineno, cols[k], path)
        if k in INT_ARGS and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
            raise ScenarioError(f"{k} must be a non-negative integer, got {v!r}", lineno, cols[k], path)
        if k == "generators" and not (v in ("representables", "sum") or (isinstance(v, str) and v.startswith("presheaf:"))):
            raise ScenarioError(f"generators must be representables, sum or presheaf:<name>, got {v!r}",
                                lineno, cols[k], path)


def parse(text: str, path: str = "<scenario>") -> Scenario:
    sc = Scenario(path=path)
    block = None   # CategoryDecl or PresheafDecl awaiting 'end'
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line, lineno, path)
        if not toks:
            continue
        head = toks[0]
        d = head.text
        if block is not None:
            if d == "end":
                block = None
                continue
            if isinstance(block, CategoryDecl):
                if d not in ("hom", "comp", "ident"):
                    raise ScenarioError(f"unexpected {d!r} inside explicit category {block.name!r}", lineno, head.col, path)
                block.body.append((lineno, toks))
            else:
                if d != "action" or len(toks) < 3:
                    raise ScenarioError("expected 'action <c> <d> <matrix>...'", lineno, head.col, path)
                block.actions.append((toks[1].text, toks[2].text, [_matrix(t, lineno, path) for t in toks[3:]], lineno))
            continue
        args = toks[1:]
        if d == "scenario":
            if len(args) != 1:
                raise ScenarioError("expected 'scenario <name>'", lineno, head.col, path)
            sc.name = args[0].text
        elif d == "modulus":
            if len(args) != 1:
                raise ScenarioError("expected 'modulus <p>'", lineno, head.col, path)
            sc.modulus = _int(args[0], lineno, path, "modulus")
            if not is_prime(sc.modulus):
                raise ScenarioError(f"modulus must be prime, got {sc.modulus}", lineno, args[0].col, path)
        elif d == "seed":
            if len(args) != 1:
                raise ScenarioError("expected 'seed <n>'", lineno, head.col, path)
            sc.seed = _int(args[0], lineno, path, "seed")
        elif d == "cosmos":
            if not args or args[0].text not in ("finvect", "chain"):
                col = args[0].col if args else head.col + len(d) + 1
                raise ScenarioError("cosmos must be 'finvect' or 'chain <lo> <hi>'", lineno, col, path)
            sc.cosmos = args[0].text
            if sc.cosmos == "chain" and len(args) == 3:
                sc.bounds = (_int(args[1], lineno, path, "lower bound"), _int(args[2], lineno, path, "upper bound"))
        elif d == "category":
            pos, kw = _split_args(args, lineno, path)
            if len(pos) != 2:
                raise ScenarioError("expected 'category <name> <kind> [key=value ...]'", lineno, head.col, path)
            name, kind = pos[0].text, pos[1].text
            if kind not in CATEGORY_KINDS:
                raise ScenarioError(f"unknown category kind {kind!r}; expected one of {', '.join(CATEGORY_KINDS)}",
                                    lineno, pos[1].col, path)
            if name in sc.categories:
                raise ScenarioError(f"category {name!r} declared twice", lineno, pos[0].col, path)
            decl = CategoryDecl(name, kind, kw, line=lineno)
            sc.categories[name] = decl
            if kind == "explicit":
                block = decl
        elif d == "presheaf":
            pos, kw = _split_args(args, lineno, path)
            if len(pos) != 3 or pos[1].text != "on" or "values" not in kw:
                raise ScenarioError("expected 'presheaf <name> on <category> values={...}'", lineno, head.col, path)
            if pos[2].text not in sc.categories:
                raise ScenarioError(f"unknown category {pos[2].text!r}", lineno, pos[2].col, path)
            decl = PresheafDecl(pos[0].text, pos[2].text, kw["values"], line=lineno)
            sc.presheaves[decl.name] = decl
            block = decl
        elif d == "check":
            pos, kw = _split_args(args, lineno, path)
            if not pos or pos[0].text not in CHECK_KINDS:
                col = pos[0].col if pos else head.col
                raise ScenarioError(f"unknown check; expected one of {', '.join(CHECK_KINDS)}", lineno, col, path)
            target = pos[1].text if len(pos) > 1 else None
            if target is not None and target not in sc.categories:
                raise ScenarioError(f"unknown category {target!r}", lineno, pos[1].col, path)
            _check_args(pos[0].text, args, kw, lineno, path)
            sc.checks.append(CheckDecl(pos[0].text, target, kw, lineno))
        else:
            raise ScenarioError(f"unknown directive {d!r}", lineno, head.col, path)
    if block is not None:
        raise ScenarioError(f"missing 'end' for block {block.name!r}", block.line, 1, path)
    return sc


def load(path: str | Path) -> Scenario:
    p = Path(path)
    return parse(p.read_text(), str(p))


def bundled_dir() -> Path:
    return Path(__file__).parent / "scenarios"


def bundled() -> list[str]:
    return sorted(p.stem for p in bundled_dir().glob("*.scn"))


def resolve(name_or_path: str) -> Path:
    p = Path(name_or_path)
    if p.exists():
        return p
    q = bundled_dir() / f"{name_or_path}.scn"
    if q.exists():
        return q
    raise FileNotFoundError(f"no scenario file or bundled scenario named {name_or_path!r}")
