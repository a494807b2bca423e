"""Textual language for cobordism words.

Grammar::

    word  := ws? [layer (";" layer)*] ws?
    layer := gen ("|" gen)*
    gen   := ("cap" | "cup" | "id" | "mu" | "delta" | "swap") ["^" natural]

"#" starts a comment running to end of line; whitespace is otherwise
insignificant.  The repetition suffix repeats a generator in parallel;
counts above 10^6 are rejected so parsing stays total instead of
exhausting memory.  Surface-name aliases are accepted on input:
pants -> delta, copants -> mu, twist -> swap, cyl -> id.  This grammar
is also the on-disk format for ``.cob`` files (UTF-8, LF or CRLF).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .words import CobordismWord, Generator, Layer


class ParseErrorKind(enum.Enum):
    UNKNOWN_TOKEN = "UnknownToken"
    ARITY_MISMATCH = "ArityMismatch"
    EMPTY_LAYER = "EmptyLayer"
    BAD_REPETITION = "BadRepetition"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError("line and column are 1-based")


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, kind: ParseErrorKind, message: str) -> None:
        if not message:
            raise ValueError("ParseError message must be nonempty")
        super().__init__(f"{span.line}:{span.column}: {kind.value}: {message}")
        self.span = span
        self.kind = kind
        self.message = message


_MAX_REPETITION = 10**6

_KEYWORDS = {
    "cap": Generator.CAP,
    "cup": Generator.CUP,
    "id": Generator.ID,
    "mu": Generator.MERGE,
    "delta": Generator.SPLIT,
    "swap": Generator.SWAP,
    # surface-name aliases
    "pants": Generator.SPLIT,
    "copants": Generator.MERGE,
    "twist": Generator.SWAP,
    "cyl": Generator.ID,
}


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "number" | "^" | "|" | ";"
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
            continue
        span_start = SourceSpan(line, col, 1)
        if ch in "|;^":
            tokens.append(_Token(ch if ch != "^" else "^", ch, span_start))
            i += 1
            col += 1
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalpha() or text[j].isdigit() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], SourceSpan(line, col, j - i)))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("number", text[i:j], SourceSpan(line, col, j - i)))
            col += j - i
            i = j
            continue
        raise ParseError(
            span_start, ParseErrorKind.UNKNOWN_TOKEN, f"unexpected character {ch!r}"
        )
    return tokens


def parse(text: str) -> CobordismWord:
    """Parse a word; raises :class:`ParseError` on any malformed input."""
    tokens = _tokenize(text)
    if not tokens:
        return CobordismWord((), 0)

    layers: list[tuple[list[Generator], SourceSpan]] = []
    gens: list[Generator] = []
    layer_span: SourceSpan | None = None
    expect_gen = True
    i = 0

    def fail(span: SourceSpan, kind: ParseErrorKind, msg: str) -> None:
        raise ParseError(span, kind, msg)

    last_span = tokens[-1].span
    while i < len(tokens):
        tok = tokens[i]
        if expect_gen:
            if tok.kind != "name":
                kind = (
                    ParseErrorKind.EMPTY_LAYER
                    if tok.kind in (";", "|")
                    else ParseErrorKind.UNKNOWN_TOKEN
                )
                fail(tok.span, kind, f"expected a generator, found {tok.text!r}")
            gen = _KEYWORDS.get(tok.text)
            if gen is None:
                fail(tok.span, ParseErrorKind.UNKNOWN_TOKEN, f"unknown generator {tok.text!r}")
            if layer_span is None:
                layer_span = tok.span
            count = 1
            i += 1
            if i < len(tokens) and tokens[i].kind == "^":
                caret = tokens[i]
                i += 1
                if i >= len(tokens) or tokens[i].kind != "number":
                    fail(caret.span, ParseErrorKind.BAD_REPETITION, "'^' needs a number")
                count = int(tokens[i].text)
                if count < 1 or count > _MAX_REPETITION:
                    fail(
                        tokens[i].span,
                        ParseErrorKind.BAD_REPETITION,
                        f"repetition must be in [1, {_MAX_REPETITION}], got {count}",
                    )
                i += 1
            gens.extend([gen] * count)
            expect_gen = False
        else:
            if tok.kind == "|":
                expect_gen = True
                i += 1
            elif tok.kind == ";":
                layers.append((gens, layer_span))  # type: ignore[arg-type]
                gens = []
                layer_span = None
                expect_gen = True
                i += 1
            else:
                fail(
                    tok.span,
                    ParseErrorKind.UNKNOWN_TOKEN,
                    f"expected '|', ';' or end of input, found {tok.text!r}",
                )
    if expect_gen:
        fail(last_span, ParseErrorKind.EMPTY_LAYER, "trailing separator leaves an empty layer")
    layers.append((gens, layer_span))  # type: ignore[arg-type]

    width = sum(g.n_in for g in layers[0][0])
    packed: list[Layer] = []
    for gen_list, span in layers:
        layer = Layer(tuple(gen_list))
        if layer.inputs != width:
            assert span is not None
            fail(
                span,
                ParseErrorKind.ARITY_MISMATCH,
                f"layer needs {layer.inputs} input circles but receives {width}",
            )
        packed.append(layer)
        width = layer.outputs
    return CobordismWord(tuple(packed), packed[0].inputs)


def format_word(w: CobordismWord) -> str:
    """Canonical text: layers joined by " ; ", generators by " | ".

    Runs of two or more adjacent identities print as ``id^k``.  The
    layerless identity word renders as ``id^n`` (its one-layer DSL
    equivalent); parse(format_word(w)) is structurally equal to w for
    every word that carries at least one layer.
    """
    if not w.layers:
        if w.source == 0:
            return ""
        return "id" if w.source == 1 else f"id^{w.source}"
    rendered_layers = []
    for layer in w.layers:
        parts: list[str] = []
        run = 0
        for gen in layer.generators + (None,):  # type: ignore[operator]
            if gen is Generator.ID:
                run += 1
                continue
            if run == 1:
                parts.append("id")
            elif run > 1:
                parts.append(f"id^{run}")
            run = 0
            if gen is not None:
                parts.append(gen.keyword)
        rendered_layers.append(" | ".join(parts))
    return " ; ".join(rendered_layers)
