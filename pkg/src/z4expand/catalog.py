"""Named codes with their published generator matrices and expected data."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from .matrixfile import parse_matrix
from .z4algebra import Z4Matrix

# kissing number of the known 34-dimensional lattice compared against C34
KISSING_34MIN3 = 560


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: Z4Matrix
    source: str
    self_dual: bool = True
    expected: dict = field(default_factory=dict)
    seed: bool = False


def build_d_family(m: int, variant: str = "plain") -> Z4Matrix:
    """The D_2m family: codes of length 2m built from shifted ``1113`` blocks.

    ``circle`` adds ``13 0..0 11``, ``plus`` adds ``0..0 22`` and ``oplus``
    adds both.
    """
    if m < 2:
        raise ValueError("the D family needs m >= 2")
    if variant not in ("plain", "circle", "plus", "oplus"):
        raise ValueError(f"unknown variant {variant!r}")
    n = 2 * m
    rows = []
    for s in range(0, n - 2, 2):
        r = [0] * n
        r[s : s + 4] = [1, 1, 1, 3]
        rows.append(r)
    if variant in ("circle", "oplus"):
        r = [0] * n
        r[0], r[1], r[-2], r[-1] = 1, 3, 1, 1
        rows.append(r)
    if variant in ("plus", "oplus"):
        rows.append([0] * (n - 2) + [2, 2])
    return Z4Matrix(rows)


def two_identity(n: int) -> Z4Matrix:
    return Z4Matrix(2 * np.eye(n, dtype=np.int64))


_TABLE = {
    # name: (type, A12E, A16E, dL, (A6L, A8L, A10L, A12L), kissing)
    "G27_4": ((7, 13), 2509, 60366, 6, (13, 142, 752, 5488), 2664),
    "G28_4": ((7, 14), 2240, 64827, 8, (0, 315, 0, 8288), 2240),
    "G29_4": ((7, 15), 1716, 63342, 6, (20, 206, 861, 5580), 1856),
    "G33_4": ((9, 15), 625, 50322, 6, (9, 74, 480, 2897), 704),
    "G34_4": ((10, 14), 515, 45771, 6, (3, 43, 294, 1929), 544),
}

# sha256 of the shipped matrix files; guards the transcriptions
DATA_SHA256 = {
    "G27_4": "8999bc26257994b026ebba90038126cc4c678b528ea6e4af0ed0a34998043403",
    "G28_4": "d485a50653907c14d27c8b1ef4cc6f502e0fbaf3e8499300bfbda252d37ad864",
    "G29_4": "ad7dd81b03bd9c0146aa8335f7e539def147252c7ce1ae7e3d5eb7531729c5d6",
    "G33_4": "863b9ecf1c86b2e60f4a0d20052cd0fd8301a513a914cdcf6935fae3550c826e",
    "G34_4": "9ea1607613208f393359a5884e264bded95c6cf3067689211496623d77749ebd",
}


def data_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", f"{name}.z4").read_text()


def data_digest(name: str) -> str:
    return hashlib.sha256(data_text(name).encode()).hexdigest()


def _table_entry(name: str) -> CatalogEntry:
    typ, a12, a16, dl, lee, kiss = _TABLE[name]
    expected = {
        "type": typ,
        "d_E": 12,
        "euclidean": {12: a12, 16: a16},
        "d_L": dl,
        "lee": dict(zip((6, 8, 10, 12), lee)),
        "min_norm": 3,
        "kissing": kiss,
    }
    return CatalogEntry(name, parse_matrix(data_text(name)), f"new self-dual code of length {int(name[1:3])}", expected=expected)


_SWE = {
    "D6_oplus": "a^6 + 3a^4c^2 + 8a^3c^3 + 12a^2b^4 + 3a^2c^4 + 24ab^4c + 12b^4c^2 + c^6",
    "E7_plus": "a^7 + 7a^4c^3 + 14a^3b^4 + 7a^3c^4 + 42a^2b^4c + 42ab^4c^2 + 14b^4c^3 + c^7",
    "L8": "a^8 + 4a^6c^2 + 22a^4c^4 + 96a^3b^4c + 4a^2c^6 + 96ab^4c^3 + 32b^8 + c^8",
    "E8": "a^8 + 16a^4b^4 + 14a^4c^4 + 48a^3b^4c + 96a^2b^4c^2 + 48ab^4c^3 + 16b^8 + 16b^4c^4 + c^8",
    "O8": "a^8 + 14a^4c^4 + 112a^3b^4c + 112ab^4c^3 + 16b^8 + c^8",
    "D8_oplus": "a^8 + 4a^6c^2 + 16a^4b^4 + 22a^4c^4 + 32a^3b^4c + 96a^2b^4c^2 + 4a^2c^6 + 32ab^4c^3 + 32b^8 + 16b^4c^4 + c^8",
    "K8_prime": "a^8 + 12a^6c^2 + 38a^4c^4 + 64a^3b^4c + 12a^2c^6 + 64ab^4c^3 + 64b^8 + c^8",
}

_LEE = {"D6_oplus": 4, "E7_plus": 4, "L8": 4, "E8": 4, "O8": 6, "D8_oplus": 4, "K8_prime": 4, "K8": 4, "D6_oplus_alt": 4}

# (rows, source, self_dual); rows exactly as printed
_LITERALS: dict[str, tuple[list[str], str, bool]] = {
    "A1": (["2"], "A_1 = {0, 2}", True),
    "ex4_D4_oplus": (["1111", "0220", "0022"], "expansion of 1111", True),
    "ex5_D4_oplus_A1": (["11110", "02200", "00220", "00002"], "expansion of 11110", True),
    "ex6_D4_oplus_A1_2": (["111100", "022000", "002200", "000020", "000002"], "second expansion at n = 6", True),
    "D6_oplus_alt": (["101123", "210111", "002022", "000202"], "third expansion at n = 6", True),
    "D6_oplus_example": (["111300", "211011", "202020", "000022"], "D6 oplus via expansion of 111300", True),
    "E7_plus": (["1003110", "0101101", "2210111", "2222222"], "E7+ via expansion of 1003110", True),
    "L8": (["10101320", "01113020", "02101011", "00202000", "00022220"], "L8 via expansion of two rows", True),
    "E8": (["10111200", "01110320", "22301101", "02231110"], "E8 member of the O8/E8 pair", True),
    "O8": (["10111200", "01110320", "00321101", "20031110"], "O8 member of the O8/E8 pair", True),
    "D8_oplus_example": (["10113000", "21200111", "00101110", "02000002", "00220202"], "D8 oplus via expansion of 10113000", True),
    "K8_prime": (["10111002", "21000111", "02000002", "00202000", "00022000", "00000022"], "K8' via expansion of 10111002", True),
    "K8": (["11111111", "02000002", "00200002", "00020002", "00002002", "00000202", "00000022"], "K8 via algorithm 1 on 11111111", True),
}

# seeds of the summary table of indecomposable codes, plus the n = 4, 5 seeds
SEEDS: dict[str, tuple[list[str], tuple[str, ...]]] = {
    "seed_D6_oplus": (["111300"], ("D6_oplus",)),
    "seed_E7_plus": (["1003110"], ("E7_plus",)),
    "seed_O8_E8": (["10111200", "01110320"], ("O8", "E8")),
    "seed_L8": (["10101320", "01113020"], ("L8",)),
    "seed_D8_oplus": (["10113000"], ("D8_oplus",)),
    "seed_K8_prime": (["10111002"], ("K8_prime",)),
    "seed_K8": (["11111111"], ("K8",)),
    "seed_n4_free": (["1111"], ("ex4_D4_oplus",)),
    "seed_n4_two": (["2000"], ("2I_4",)),
    "seed_n5_free": (["11110"], ("ex5_D4_oplus_A1",)),
    "seed_n5_two": (["20000"], ("2I_5",)),
}

_BUILDERS: dict[str, tuple[Callable[[], Z4Matrix], str]] = {
    "D4_oplus": (lambda: build_d_family(2, "oplus"), "D family, m = 2"),
    "D6_oplus": (lambda: build_d_family(3, "oplus"), "D family, m = 3"),
    "D8_oplus": (lambda: build_d_family(4, "oplus"), "D family, m = 4"),
    "2I_4": (lambda: two_identity(4), "2 I_4"),
    "2I_5": (lambda: two_identity(5), "2 I_5"),
    "2I_6": (lambda: two_identity(6), "2 I_6"),
}


def names() -> list[str]:
    return list(_TABLE) + list(_BUILDERS) + list(_LITERALS) + list(SEEDS)


def table_names() -> list[str]:
    return list(_TABLE)


def _expected_small(name: str) -> dict:
    out = {}
    key = name.removesuffix("_example")
    if key in _SWE:
        out["swe"] = _SWE[key]
    if key in _LEE:
        out["d_L"] = _LEE[key]
    return out


def get(name: str) -> CatalogEntry:
    if name in _TABLE:
        return _table_entry(name)
    if name in _BUILDERS:
        fn, src = _BUILDERS[name]
        return CatalogEntry(name, fn(), src, expected=_expected_small(name))
    if name in _LITERALS:
        rows, src, sd = _LITERALS[name]
        return CatalogEntry(name, Z4Matrix(rows), src, self_dual=sd, expected=_expected_small(name))
    if name in SEEDS:
        rows, targets = SEEDS[name]
        return CatalogEntry(
            name, Z4Matrix(rows), "seed vectors", self_dual=False, expected={"targets": targets}, seed=True
        )
    raise KeyError(f"unknown catalog entry {name!r}")


def entries() -> list[CatalogEntry]:
    return [get(n) for n in names()]


# ---------------------------------------------------------------------------
# reproduction of the published numbers

FAST_SKIP_N = 33


@dataclass(frozen=True)
class Check:
    section: str
    subject: str
    quantity: str
    expected: object
    actual: object
    status: str  # PASS, FAIL or SKIPPED

    def line(self) -> str:
        return f"{self.status:7s} {self.section:10s} {self.subject:18s} {self.quantity:14s} expected={self.expected} actual={self.actual}"


@dataclass
class ReproductionReport:
    checks: list[Check] = field(default_factory=list)
    # weight reports of the table codes that were enumerated
    reports: dict = field(default_factory=dict)

    def add(self, section, subject, quantity, expected, actual):
        status = "PASS" if expected == actual else "FAIL"
        self.checks.append(Check(section, subject, quantity, expected, actual, status))

    def skip(self, section, subject, quantity, expected):
        self.checks.append(Check(section, subject, quantity, expected, None, "SKIPPED"))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "FAIL"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [c.line() for c in self.checks]
        counts = {s: sum(c.status == s for c in self.checks) for s in ("PASS", "FAIL", "SKIPPED")}
        lines.append(f"summary: {counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIPPED']} skipped")
        return "\n".join(lines)


def _table_checks(rep: ReproductionReport, name: str, g: Z4Matrix, fast: bool, threads, progress) -> None:
    from .analyze import weight_report
    from .codes import is_self_dual, profile
    from .lattice import lattice_report

    exp = get(name).expected
    typ = profile(g).type
    rep.add("table", name, "type", exp["type"], typ)
    rep.add("table", name, "self-dual", True, is_self_dual(g))
    keys = ["d_E", "A12E", "A16E", "d_L", "A6L", "A8L", "A10L", "A12L"]
    want = [exp["d_E"], exp["euclidean"][12], exp["euclidean"][16], exp["d_L"], *exp["lee"].values()]
    if fast and g.n >= FAST_SKIP_N:
        for k, w in zip(keys, want):
            rep.skip("table", name, k, w)
        rep.skip("lattice", name, "mu", exp["min_norm"])
        rep.skip("lattice", name, "kissing", exp["kissing"])
        return
    wr = weight_report(g, threads=threads, progress=progress)
    rep.reports[name] = wr
    got = [wr.d_E, wr.euclidean(12), wr.euclidean(16), wr.d_L, *(wr.lee(w) for w in exp["lee"])]
    for k, w, a in zip(keys, want, got):
        rep.add("table", name, k, w, a)
    try:
        lat = lattice_report(g, wr)
    except ValueError as exc:
        rep.add("lattice", name, "mu", exp["min_norm"], f"error: {exc}")
        return
    rep.add("lattice", name, "mu", exp["min_norm"], lat.min_norm)
    rep.add("lattice", name, "kissing", exp["kissing"], lat.kissing)
    if name == "G34_4":
        rep.add("lattice", name, "N != 34MIN3", True, lat.kissing != KISSING_34MIN3)


def _example_checks(rep: ReproductionReport) -> None:
    from .analyze import parse_swe, render_swe, weight_report

    for name in names():
        e = get(name)
        if name in _TABLE or e.seed or not ("swe" in e.expected or "d_L" in e.expected):
            continue
        wr = weight_report(e.matrix)
        if "swe" in e.expected:
            rep.add("swe", name, "SWE", render_swe(parse_swe(e.expected["swe"])), render_swe(wr.swe))
        if "d_L" in e.expected:
            rep.add("swe", name, "d_L", e.expected["d_L"], wr.d_L)


def _recovery_checks(rep: ReproductionReport) -> None:
    from .analyze import parse_swe, permutation_equivalent, weight_report
    from .codes import code_contains, is_self_dual, profile
    from .expand import expand

    found: dict[str, Z4Matrix] = {}
    for name, (_, targets) in SEEDS.items():
        seed = get(name).matrix
        k1 = profile(get(targets[0]).matrix).k1
        by_swe: dict[tuple, Z4Matrix] = {}
        sound = True
        for r in expand(seed, target_dim=k1):
            sound &= is_self_dual(r.code) and code_contains(r.code, seed)
            by_swe.setdefault(tuple(sorted(weight_report(r.code).swe.items())), r.code)
        rep.add("recovery", name, "outputs valid", True, sound)
        for t in targets:
            te = get(t)
            want = parse_swe(te.expected["swe"]) if "swe" in te.expected else weight_report(te.matrix).swe
            hit = by_swe.get(tuple(sorted(want.items())))
            rep.add("recovery", name, f"reaches {t}", True, hit is not None)
            if hit is not None:
                found[name + ":" + t] = hit
                if "d_L" in te.expected:
                    rep.add("recovery", name, f"d_L of {t}", te.expected["d_L"], weight_report(hit).d_L)
    a, b = found.get("seed_n4_free:ex4_D4_oplus"), found.get("seed_n4_two:2I_4")
    if a is not None and b is not None:
        rep.add("recovery", "n=4", "inequivalent", False, permutation_equivalent(a, b))


def reproduce_tables(
    fast: bool = False,
    threads: int | None = None,
    progress=None,
    matrices: dict[str, Z4Matrix] | None = None,
) -> ReproductionReport:
    """Recompute every published number and diff it against the catalog.

    ``matrices`` replaces table matrices by name (used for fault injection);
    ``fast`` skips the n >= 33 enumerations.
    """
    rep = ReproductionReport()
    for name in table_names():
        if matrices is None or name not in matrices:
            rep.add("checksum", name, "sha256", DATA_SHA256[name], data_digest(name))
        g = (matrices or {}).get(name) or get(name).matrix
        _table_checks(rep, name, g, fast, threads, progress)
    _example_checks(rep)
    _recovery_checks(rep)
    return rep
