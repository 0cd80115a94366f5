"""Command-line front end.

Exit codes: 0 success, 1 verification or decryption failure, 2 usage,
3 malformed or unreadable files.
"""

from __future__ import annotations

import argparse
import io
import logging
import os
import random
import secrets
import sys
import tempfile
import warnings
from pathlib import Path

from . import worked_example as example
from .attacks import AttackReport, brute_force_r_pair, brute_force_split, brute_force_t, write_csv
from .codec import BlockCodec, decode_bytes, encode_bytes
from .errors import FormatError, MST3Error
from .fileformat import (
    CiphertextFile,
    fingerprint,
    parse_ciphertext,
    parse_private_key,
    parse_public_key,
    serialize_ciphertext,
    serialize_private_key,
    serialize_public_key,
)
from .logsig import mixed_radix_decode
from .profiles import PROFILES, get_profile, sizing_report
from .scheme import DecryptionTrace, Randomness, decrypt, encrypt, keygen, sample_randomness

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_FORMAT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def atomic_write(path: str | os.PathLike, data: bytes) -> None:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _seeded_rng(seed: str | None):
    seed = seed or os.environ.get("MST3_SEED")
    if not seed:
        return secrets.SystemRandom()
    try:
        return random.Random(int(seed, 16))
    except ValueError:
        raise UsageError(f"seed must be hexadecimal, got {seed!r}") from None


# -- subcommands -------------------------------------------------------------

def cmd_keygen(args) -> int:
    profile = get_profile(args.profile)
    rng = _seeded_rng(args.seed)
    pk, sk = keygen(profile.params(), rng)
    atomic_write(f"{args.out}.pub", serialize_public_key(pk).encode())
    atomic_write(f"{args.out}.sec", serialize_private_key(sk).encode())
    print(f"wrote {args.out}.pub and {args.out}.sec (profile {profile.name}, key {fingerprint(pk)})")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    fixed = args.r1 is not None or args.r2 is not None
    if fixed and not args.insecure_test:
        raise UsageError("--r1/--r2 require --insecure-test")
    if fixed and (args.r1 is None or args.r2 is None):
        raise UsageError("--r1 and --r2 must be given together")
    pk = parse_public_key(_read_text(args.pub))
    payload = _read_bytes(args.input)
    q = pk.params.q
    rng = secrets.SystemRandom()
    blocks = []
    for m in encode_bytes(payload, BlockCodec(pk.params.field)):
        R = Randomness(args.r1, args.r2) if fixed else sample_randomness(rng, q)
        blocks.append(encrypt(pk, m, R))
    ctf = CiphertextFile(pk.params.field, fingerprint(pk), blocks)
    atomic_write(args.output, serialize_ciphertext(ctf).encode())
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sk = parse_private_key(_read_text(args.sec))
    ctf = parse_ciphertext(_read_text(args.input))
    if ctf.field != sk.public.params.field or ctf.key_fingerprint != fingerprint(sk.public):
        print("error: ciphertext was not produced for this key", file=sys.stderr)
        return EXIT_MISMATCH
    plain = [decrypt(sk, ct) for ct in ctf.blocks]
    payload = decode_bytes(plain, BlockCodec(ctf.field))
    atomic_write(args.output, payload)
    return EXIT_OK


def cmd_demo(args) -> int:
    if not args.paper_example:
        raise UsageError("demo needs --paper-example")
    return run_worked_example(sys.stdout)


def run_worked_example(out) -> int:
    """Replay the GF(3^5) walkthrough; returns EXIT_MISMATCH on any deviation."""
    failures = 0

    def check(label, got, want):
        nonlocal failures
        ok = got == want
        failures += not ok
        shown = got.pretty() if hasattr(got, "pretty") else str(got)
        print(f"{label} = {shown} {'OK' if ok else 'MISMATCH (expected ' + str(want) + ')'}", file=out)

    el = example.element
    pk, sk = example.keys()
    for name, table in (("gamma1", example.GAMMA1), ("gamma2", example.GAMMA2)):
        cover = getattr(pk, name)
        want = example.cover(table, cover.sig_type)
        check(f"{name} table ({cover.sig_type.total_rows} rows)", "match" if cover == want else "differ", "match")

    check("R1 digits", mixed_radix_decode(example.R1, example.TYPE1).digits, example.R1_DIGITS)
    check("R2 digits", mixed_radix_decode(example.R2, example.TYPE2).digits, example.R2_DIGITS)
    check("gamma1(29)", pk.gamma1.evaluate(example.R1), el(example.GAMMA1_R1))
    check("gamma2(31)", pk.gamma2.evaluate(example.R2), el(example.GAMMA2_R2))

    m = el(example.MESSAGE)
    ct = encrypt(pk, m, Randomness(example.R1, example.R2))
    check("y1", ct.y1, el(example.Y1))
    check("y2", ct.y2, el(example.Y2))
    check("y3", ct.y3, el(example.Y3))

    tr = DecryptionTrace()
    try:
        recovered = decrypt(sk, ct, tr)
    except MST3Error as exc:
        print(f"decryption failed: {exc}", file=out)
        return EXIT_MISMATCH
    check("D1", tr.d1, el(example.D1))
    check("D*1", tr.dstar1, el(example.DSTAR1))
    check("beta1(R1)", str(tr.dstar1.b), example.BETA1_VALUE)
    check("beta1 residues", [str(r) for r in tr.residues1], example.BETA1_RESIDUES)
    check("R1", tr.r1.value, example.R1)
    check("y2'", tr.y2_prime, el(example.Y2_PRIME))
    check("D2", tr.d2, el(example.D2))
    check("D*2", tr.dstar2, el(example.DSTAR2))
    check("beta2(R2)", str(tr.dstar2.c), example.BETA2_VALUE)
    check("beta2 residues", [str(r) for r in tr.residues2], example.BETA2_RESIDUES)
    check("R2", tr.r2.value, example.R2)
    check("m", recovered.element(pk.params.group), m)
    print("all values match" if not failures else f"{failures} mismatches", file=out)
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_attack(args) -> int:
    pk = parse_public_key(_read_text(args.pub))
    ctf = parse_ciphertext(_read_text(args.ct))
    if not 0 <= args.block < len(ctf.blocks):
        raise UsageError(f"ciphertext has {len(ctf.blocks)} blocks")
    ct = ctf.blocks[args.block]
    if args.kind == "tkey":
        if not args.sec:
            raise UsageError("tkey attack needs --sec to supply the known signatures")
        sk = parse_private_key(_read_text(args.sec))
        report = brute_force_t(pk, ct, sk.beta1, sk.beta2)
    elif args.kind == "pair":
        report = brute_force_r_pair(pk, ct)
    else:
        report = brute_force_split(pk, ct)
    print(report.line())
    if report.plaintext is not None:
        m = report.plaintext
        print(f"recovered message S(0, {m.m2}, {m.m3})")
    if args.csv:
        _write_reports(args.csv, [report])
    return EXIT_OK if report.succeeded else EXIT_MISMATCH


def _write_reports(path: str, reports: list[AttackReport]) -> None:
    buf = io.StringIO()
    write_csv(reports, buf)
    atomic_write(path, buf.getvalue().encode())


def cmd_sizing(args) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = sizing_report(args.profile)
    for line in report.lines():
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mst3ree", description="MST3 encryption over the small Ree group U(q)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--profile", choices=sorted(PROFILES), default="toy")
    p.add_argument("--seed", help="hex seed for a reproducible (non-cryptographic) key; falls back to $MST3_SEED")
    p.add_argument("--out", required=True, help="basename for <out>.pub and <out>.sec")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a file")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--r1", type=int)
    p.add_argument("--r2", type=int)
    p.add_argument("--insecure-test", action="store_true", help="allow fixed --r1/--r2 for every block")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a file")
    p.add_argument("--sec", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("demo", help="replay the GF(3^5) worked example")
    p.add_argument("--paper-example", action="store_true")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("attack", help="run a toy-scale brute-force attack on one ciphertext block")
    p.add_argument("kind", choices=["pair", "split", "tkey"])
    p.add_argument("--pub", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--sec", help="secret key whose signatures are assumed known (tkey only)")
    p.add_argument("--block", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("sizing", help="key-size arithmetic for a profile")
    p.add_argument("--profile", choices=sorted(PROFILES), default="large")
    p.set_defaults(func=cmd_sizing)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except MST3Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
