"""Line-oriented key and ciphertext files (format ``MST3-REE/1``).

Public key::

    MST3-REE/1
    kind public
    field <n> <g trits, constant term first>
    generator verified|unverified
    type1 <r_1> ... <r_s>
    type2 <r_1> ... <r_s>
    section alpha1
    block 1 r=<r_1>
    <a>:<b>:<c>
    ...
    end

The secret file carries sections beta1, beta2 (one trit string per row),
t1, t2 (one group element per line) and then the public tables.  A
ciphertext file lists one ``y1:y2:y3`` line (nine trit strings) per block
and closes with the padding marker.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .codec import PADDING_SCHEME
from .errors import FormatError, MST3Error
from .field import Field, make_field
from .group import GroupElement, UnipotentGroup, group_for
from .logsig import Cover, LogSignature, SignatureType
from .scheme import Ciphertext, PrivateKey, PublicKey, SchemeParams

FORMAT_VERSION = "MST3-REE/1"
PUBLIC_SECTIONS = ("alpha1", "alpha2", "gamma1", "gamma2")


def _header(kind: str, field: Field) -> list[str]:
    return [FORMAT_VERSION, f"kind {kind}", f"field {field.n} {field.g_string}"]


def _params_lines(params: SchemeParams) -> list[str]:
    f = params.field
    return [
        "generator " + ("verified" if f.generator_verified else "unverified"),
        "type1 " + " ".join(map(str, params.type1.radices)),
        "type2 " + " ".join(map(str, params.type2.radices)),
    ]


def _blocks_lines(name: str, blocks) -> list[str]:
    lines = [f"section {name}"]
    for i, block in enumerate(blocks, start=1):
        lines.append(f"block {i} r={len(block)}")
        lines.extend(str(row) for row in block)
    return lines


def _public_body(pk: PublicKey) -> list[str]:
    lines = []
    for name in PUBLIC_SECTIONS:
        lines += _blocks_lines(name, getattr(pk, name).blocks)
    return lines


def serialize_public_key(pk: PublicKey) -> str:
    lines = _header("public", pk.params.field) + _params_lines(pk.params) + _public_body(pk) + ["end"]
    return "\n".join(lines) + "\n"


def serialize_private_key(sk: PrivateKey) -> str:
    params = sk.public.params
    lines = _header("secret", params.field) + _params_lines(params)
    lines += _blocks_lines("beta1", sk.beta1.blocks)
    lines += _blocks_lines("beta2", sk.beta2.blocks)
    lines += ["section t1"] + [str(t) for t in sk.t1]
    lines += ["section t2"] + [str(t) for t in sk.t2]
    lines += _public_body(sk.public) + ["end"]
    return "\n".join(lines) + "\n"


def fingerprint(pk: PublicKey) -> str:
    return hashlib.sha256(serialize_public_key(pk).encode()).hexdigest()[:16]


@dataclass
class CiphertextFile:
    field: Field
    key_fingerprint: str
    blocks: list[Ciphertext]
    padding: str = PADDING_SCHEME


def serialize_ciphertext(ctf: CiphertextFile) -> str:
    lines = _header("ciphertext", ctf.field)
    lines += [f"key {ctf.key_fingerprint}", f"blocks {len(ctf.blocks)}"]
    lines += [f"{ct.y1}:{ct.y2}:{ct.y3}" for ct in ctf.blocks]
    lines.append(f"padding {ctf.padding}")
    return "\n".join(lines) + "\n"


# -- parsing ---------------------------------------------------------------

class _Reader:
    def __init__(self, text: str):
        if not text.endswith("\n"):
            raise FormatError("file must end with a newline")
        self.lines = text[:-1].split("\n")
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise FormatError("unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def keyword(self, word: str) -> list[str]:
        line = self.next()
        parts = line.split(" ")
        if parts[0] != word:
            raise FormatError(f"line {self.pos}: expected '{word} ...', got {line!r}")
        return parts[1:]

    def done(self) -> None:
        if self.pos != len(self.lines):
            raise FormatError(f"trailing content after line {self.pos}")


def _parse_int(token: str) -> int:
    if not token.isdigit() or (token != "0" and token.startswith("0")):
        raise FormatError(f"bad integer {token!r}")
    return int(token)


def _read_header(rd: _Reader, kind: str) -> Field:
    version = rd.next()
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version!r}")
    got = rd.keyword("kind")
    if got != [kind]:
        raise FormatError(f"expected a {kind} file, got kind {' '.join(got)!r}")
    parts = rd.keyword("field")
    if len(parts) != 2:
        raise FormatError("field line needs n and g")
    try:
        return make_field(_parse_int(parts[0]), parts[1])
    except (MST3Error, ValueError) as exc:
        raise FormatError(f"bad field parameters: {exc}") from exc


def _read_params(rd: _Reader, field: Field) -> SchemeParams:
    gen = rd.keyword("generator")
    expected = "verified" if field.generator_verified else "unverified"
    if gen != [expected]:
        raise FormatError(f"generator flag {' '.join(gen)!r} disagrees with field ({expected})")
    try:
        t1 = SignatureType(tuple(_parse_int(r) for r in rd.keyword("type1")))
        t2 = SignatureType(tuple(_parse_int(r) for r in rd.keyword("type2")))
        return SchemeParams(group_for(field), t1, t2)
    except ValueError as exc:
        raise FormatError(f"bad signature types: {exc}") from exc


def _read_blocks(rd: _Reader, name: str, sig_type: SignatureType, parse_row) -> list[list]:
    if rd.keyword("section") != [name]:
        raise FormatError(f"line {rd.pos}: expected section {name}")
    blocks = []
    for i, r in enumerate(sig_type.radices, start=1):
        header = rd.next()
        if header != f"block {i} r={r}":
            raise FormatError(f"line {rd.pos}: expected 'block {i} r={r}', got {header!r}")
        rows = []
        for _ in range(r):
            line = rd.next()
            try:
                rows.append(parse_row(line))
            except ValueError as exc:
                raise FormatError(f"line {rd.pos}: {exc}") from exc
        blocks.append(rows)
    return blocks


def _read_elements(rd: _Reader, name: str, count: int, group: UnipotentGroup) -> list[GroupElement]:
    if rd.keyword("section") != [name]:
        raise FormatError(f"line {rd.pos}: expected section {name}")
    out = []
    for _ in range(count):
        line = rd.next()
        try:
            out.append(_strict_element(group, line))
        except ValueError as exc:
            raise FormatError(f"line {rd.pos}: {exc}") from exc
    return out


def _strict_element(group: UnipotentGroup, text: str) -> GroupElement:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected a:b:c, got {text!r}")
    return group.from_trits(*parts)


def _read_public_body(rd: _Reader, params: SchemeParams) -> PublicKey:
    group = params.group
    covers = {}
    for name in PUBLIC_SECTIONS:
        sig_type = params.type1 if name.endswith("1") else params.type2
        blocks = _read_blocks(rd, name, sig_type, lambda line: _strict_element(group, line))
        try:
            covers[name] = Cover(group, sig_type, blocks, zero_a=(name == "alpha2"))
        except MST3Error as exc:
            raise FormatError(f"section {name}: {exc}") from exc
    return PublicKey(params, **covers)


def parse_public_key(text: str) -> PublicKey:
    rd = _Reader(text)
    field = _read_header(rd, "public")
    params = _read_params(rd, field)
    pk = _read_public_body(rd, params)
    rd.keyword("end")
    rd.done()
    return pk


def parse_private_key(text: str) -> PrivateKey:
    rd = _Reader(text)
    field = _read_header(rd, "secret")
    params = _read_params(rd, field)
    sigs = []
    for name, sig_type in (("beta1", params.type1), ("beta2", params.type2)):
        blocks = _read_blocks(rd, name, sig_type, field.from_trits)
        try:
            sigs.append(LogSignature(field, sig_type, blocks))
        except MST3Error as exc:
            raise FormatError(f"section {name}: {exc}") from exc
    t1 = _read_elements(rd, "t1", params.type1.s + 1, params.group)
    t2 = _read_elements(rd, "t2", params.type2.s + 1, params.group)
    pk = _read_public_body(rd, params)
    rd.keyword("end")
    rd.done()
    try:
        return PrivateKey(sigs[0], sigs[1], tuple(t1), tuple(t2), pk)
    except ValueError as exc:
        raise FormatError(f"inconsistent private key: {exc}") from exc


def parse_ciphertext(text: str) -> CiphertextFile:
    rd = _Reader(text)
    field = _read_header(rd, "ciphertext")
    group = group_for(field)
    key = rd.keyword("key")
    if len(key) != 1 or len(key[0]) != 16:
        raise FormatError("bad key fingerprint line")
    count_tokens = rd.keyword("blocks")
    if len(count_tokens) != 1:
        raise FormatError("bad blocks line")
    count = _parse_int(count_tokens[0])
    blocks = []
    for _ in range(count):
        line = rd.next()
        parts = line.split(":")
        if len(parts) != 9:
            raise FormatError(f"line {rd.pos}: ciphertext block needs 9 trit strings")
        try:
            ys = [group.from_trits(*parts[k:k + 3]) for k in (0, 3, 6)]
        except ValueError as exc:
            raise FormatError(f"line {rd.pos}: {exc}") from exc
        blocks.append(Ciphertext(*ys))
    padding = rd.keyword("padding")
    if padding != [PADDING_SCHEME]:
        raise FormatError(f"unsupported padding scheme {' '.join(padding)!r}")
    rd.done()
    return CiphertextFile(field, key[0], blocks)
