"""The first steps of the Anick resolution of the trivial module.

Given a reduced complete rewriting system presenting an augmented graded
algebra (every generator maps to 0 under the augmentation), this module
builds:

* the chain sets T_{-1} = {empty word}, T_0 = generators, T_1 = rule leading
  monomials, T_2 = tips of minimal overlaps between T_1 elements;
* the free modules P_n on those chains, with K-basis m.t (m an irreducible
  word, t a chain), ordered through m.t -> mt;
* the maps delta_n / j_n and the mutually recursive differentials d_n and
  splittings i_n:

      d_0(.t)     = delta_0(.t)
      d_{n+1}(.t) = delta_{n+1}(.t) - i_n(d_n(delta_{n+1}(.t)))
      i_n(f)      = j_n(lt f) + i_n(f - d_n(j_n(lt f))),   i_0 = j_0

* degree-by-degree matrices of the differentials with exact rank checks that
  certify the complex is exact at P_0 and P_1 in every tested degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .free_algebra import (
    Degree,
    EMPTY_WORD,
    FieldSpec,
    FreeAlgebraError,
    Polynomial,
    Word,
)
from .rewriting import RewriteSystem, find_overlaps


class ChainError(FreeAlgebraError):
    """Chain-set construction violated a structural assumption."""


class SplittingError(FreeAlgebraError):
    """The contracting homotopy failed: input not in the expected image."""


@dataclass(frozen=True)
class Chain:
    """A module generator .t at one level of the resolution.

    Level 2 chains carry their unique minimal-overlap decomposition
    ``word = m1.v = u.m2`` as the pair (u, right_lhs = m2).
    """

    level: int
    word: Word
    u: Optional[Word] = None
    right_lhs: Optional[Word] = None

    @property
    def degree(self) -> Degree:
        return self.word.degree

    def to_json(self) -> list[str]:
        return list(self.word.tokens)

    def __str__(self) -> str:
        return f".{self.word}" if self.level >= 0 else ".e"

    def __repr__(self) -> str:
        return f"Chain(level={self.level}, {self.word})"


class ModuleElement:
    """Finitely supported combination of basis elements m.t of one P_n."""

    __slots__ = ("level", "terms", "field")

    def __init__(self, level: int, terms: dict, field: FieldSpec,
                 *, _clean: bool = False):
        if not _clean:
            clean: dict[tuple[Word, Chain], object] = {}
            for key, c in terms.items():
                c = field.coerce(c)
                if key in clean:
                    c = field.add(clean[key], c)
                if c:
                    clean[key] = c
                elif key in clean:
                    del clean[key]
            terms = clean
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):  # pragma: no cover - safety net
        raise AttributeError("ModuleElement is immutable")

    @classmethod
    def zero(cls, level: int, field: FieldSpec) -> "ModuleElement":
        return cls(level, {}, field, _clean=True)

    @classmethod
    def basis(cls, m: Word, chain: Chain, field: FieldSpec,
              coeff=1) -> "ModuleElement":
        return cls(chain.level, {(m, chain): coeff}, field)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if self.level != other.level or self.field != other.field:
            raise ValueError("module element mismatch")
        field = self.field
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = field.add(out.get(key, 0), c)
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return ModuleElement(self.level, out, field, _clean=True)

    def __neg__(self) -> "ModuleElement":
        field = self.field
        return ModuleElement(
            self.level, {k: field.neg(c) for k, c in self.terms.items()},
            field, _clean=True)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def scale(self, coeff) -> "ModuleElement":
        field = self.field
        coeff = field.coerce(coeff)
        if not coeff:
            return ModuleElement.zero(self.level, field)
        return ModuleElement(
            self.level, {k: field.mul(c, coeff) for k, c in self.terms.items()},
            field, _clean=True)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ModuleElement) and self.level == other.level
                and self.field == other.field and self.terms == other.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def coefficient(self, m: Word, chain: Chain):
        return self.terms.get((m, chain), self.field.coerce(0))

    def chain_coefficient(self, chain: Chain) -> Polynomial:
        """The algebra coefficient of the coordinate .chain."""
        return Polynomial(
            {m: c for (m, t), c in self.terms.items() if t == chain},
            self.field, _clean=True)

    def chains(self) -> set[Chain]:
        return {t for (_, t) in self.terms}

    def degrees(self) -> set[Degree]:
        return {m.degree + t.degree for (m, t) in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (m, t), c in sorted(
                self.terms.items(),
                key=lambda kv: (str(kv[0][1].word), str(kv[0][0]))):
            coeff = "" if c == 1 else f"{c}*"
            head = str(m) if not m.is_empty else ""
            tail = str(t.word) if t.level >= 0 else "e"
            parts.append(f"{coeff}{head}.{tail}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ModuleElement(level={self.level}, {self})"


# --------------------------------------------------------------------------
# exact graded matrices
# --------------------------------------------------------------------------


@dataclass
class GradedMatrix:
    """The matrix of one differential in one degree, over the exact field."""

    degree: Degree
    row_labels: list[tuple[Word, Chain]]
    col_labels: list[tuple[Word, Chain]]
    entries: list[list]  # rows x cols

    def rank(self, field: FieldSpec) -> int:
        if field.characteristic:
            return _rank_mod_p([row[:] for row in self.entries],
                               field.characteristic)
        return _rank_exact([[Fraction(x) for x in row]
                            for row in self.entries])

    def to_json(self) -> dict:
        cells = []
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x:
                    cells.append([i, j, str(x)])
        return {
            "degree": [self.degree.alpha, self.degree.beta],
            "rows": [[str(m), str(t.word)] for m, t in self.row_labels],
            "cols": [[str(m), str(t.word)] for m, t in self.col_labels],
            "entries": cells,
        }


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    if not rows or not rows[0]:
        return 0
    a = np.array(rows, dtype=np.int64) % p
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        pivots = np.nonzero(a[rank:, col])[0]
        if pivots.size == 0:
            continue
        pivot = rank + int(pivots[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = (a[rank] * inv) % p
        hits = np.nonzero(a[:, col])[0]
        for i in hits:
            if i != rank:
                a[i] = (a[i] - a[i, col] * a[rank]) % p
        rank += 1
        if rank == n_rows:
            break
    return rank


def _rank_exact(rows: list[list[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    n_rows = len(rows)
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = None
        for i in range(rank, n_rows):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(n_rows):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


# --------------------------------------------------------------------------
# the complex
# --------------------------------------------------------------------------


@dataclass
class DegreeReport:
    degree: Degree
    dims: dict          # level -> dimension of the graded component
    ranks: dict         # map name -> rank
    exact_at_augmentation: bool
    exact_at_p0: bool
    exact_at_p1: bool

    @property
    def ok(self) -> bool:
        return (self.exact_at_augmentation and self.exact_at_p0
                and self.exact_at_p1)

    def to_json(self) -> dict:
        return {
            "degree": [self.degree.alpha, self.degree.beta],
            "dims": {str(k): v for k, v in self.dims.items()},
            "ranks": dict(self.ranks),
            "exact_at_augmentation": self.exact_at_augmentation,
            "exact_at_P0": self.exact_at_p0,
            "exact_at_P1": self.exact_at_p1,
        }


class AnickComplex:
    """Chains and differentials for one reduced complete rewriting system."""

    def __init__(self, system: RewriteSystem):
        if not system.is_reduced():
            raise ChainError("the Anick construction needs a reduced basis")
        self.system = system
        self.order = system.order
        self.field = system.field
        self.e_chain = Chain(-1, EMPTY_WORD)
        self.t0 = tuple(Chain(0, Word(g.char)) for g in system.alphabet)
        self._t0_by_char = {c.word.chars: c for c in self.t0}
        self.t1 = tuple(Chain(1, r.lhs) for r in system.rules)
        self._t1_by_chars = {c.word.chars: c for c in self.t1}
        self._check_antichain()
        self.t2 = self._build_t2()
        self._t2_by_chars = {c.word.chars: c for c in self.t2}
        self._d_memo: dict[tuple[int, Chain], ModuleElement] = {}
        self._words_bound = -1
        self._words_by_degree: dict[Degree, list[Word]] = {}

    # -- chain sets ---------------------------------------------------------

    def _check_antichain(self) -> None:
        for c1 in self.t1:
            for c2 in self.t1:
                if c1 is not c2 and c1.word.is_factor_of(c2.word):
                    raise ChainError(
                        f"T1 is not an anti-chain: {c1.word} divides {c2.word}")

    def _build_t2(self) -> tuple[Chain, ...]:
        tips: dict[str, tuple[Word, Word, Word]] = {}
        for r1 in self.system.rules:
            for r2 in self.system.rules:
                for tip, u, v, case in find_overlaps(r1.lhs, r2.lhs):
                    if case != "overlap":
                        raise ChainError(
                            "containment overlap in a reduced system")
                    prev = tips.get(tip.chars)
                    if prev is not None and (prev[1].chars != u.chars
                                             or prev[2].chars != r2.lhs.chars):
                        raise ChainError(
                            f"ambiguous overlap decomposition for {tip}")
                    tips[tip.chars] = (tip, u, r2.lhs)
        minimal: list[Chain] = []
        all_tips = list(tips.values())
        for tip, u, m2 in all_tips:
            if any(other.chars != tip.chars and other.chars in tip.chars
                   for other, _, _ in all_tips):
                continue
            minimal.append(Chain(2, tip, u=u, right_lhs=m2))
        minimal.sort(key=lambda c: self.order.key(c.word))
        return tuple(minimal)

    def chains(self, level: int) -> tuple[Chain, ...]:
        return {-1: (self.e_chain,), 0: self.t0, 1: self.t1,
                2: self.t2}[level]

    def degree_table(self, level: int) -> dict[Chain, Degree]:
        return {c: c.degree for c in self.chains(level)}

    def matches_w(self) -> list[tuple[Chain, Chain]]:
        """All (t1, t2) chain pairs of equal weight."""
        out = [(c1, c2) for c1 in self.t1 for c2 in self.t2
               if c1.degree == c2.degree]
        out.sort(key=lambda pair: (self.order.key(pair[0].word),
                                   self.order.key(pair[1].word)))
        return out

    # -- irreducible words, graded bases -------------------------------------

    def _ensure_words(self, norm_bound: int) -> None:
        if norm_bound <= self._words_bound:
            return
        by_degree: dict[Degree, list[Word]] = {}
        for w in self.system.irreducible_words(norm_bound):
            by_degree.setdefault(w.degree, []).append(w)
        self._words_by_degree = by_degree
        self._words_bound = norm_bound

    def irreducible_of_degree(self, degree: Degree) -> list[Word]:
        self._ensure_words(degree.norm)
        return self._words_by_degree.get(degree, [])

    def pair_key(self, m: Word, chain: Chain):
        """Basis order on m.t via the word mt; ties broken by t then m."""
        key = self.order.key
        return (key(m.chars + chain.word.chars), key(chain.word.chars),
                key(m.chars))

    def basis(self, level: int, degree: Degree,
              chain_set: Optional[Sequence[Chain]] = None
              ) -> list[tuple[Word, Chain]]:
        """The K-basis of (P_level)_degree, sorted descending."""
        chains = self.chains(level) if chain_set is None else chain_set
        out: list[tuple[Word, Chain]] = []
        for t in chains:
            rest = degree - t.degree
            if rest.alpha < 0 or rest.beta < 0:
                continue
            for m in self.irreducible_of_degree(rest):
                out.append((m, t))
        out.sort(key=lambda mt: self.pair_key(*mt), reverse=True)
        return out

    def module_dimension(self, level: int, degree: Degree) -> int:
        return len(self.basis(level, degree))

    # -- the maps -------------------------------------------------------------

    def act(self, m: Union[Word, str], elt: ModuleElement) -> ModuleElement:
        """Left action of an irreducible word: multiply, then normalize."""
        chars = m.chars if isinstance(m, Word) else m
        if not chars:
            return elt
        field = self.field
        nf = self.system._nf_chars
        out: dict[tuple[Word, Chain], object] = {}
        for (w, t), c in elt.items():
            for chars2, c2 in nf(chars + w.chars).items():
                key = (Word(chars2), t)
                s = field.add(out.get(key, 0), field.mul(c, c2))
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return ModuleElement(elt.level, out, field, _clean=True)

    def act_poly(self, f: Polynomial, elt: ModuleElement) -> ModuleElement:
        out = ModuleElement.zero(elt.level, self.field)
        for w, c in f.items():
            out = out + self.act(w, elt).scale(c)
        return out

    def epsilon(self, elt: ModuleElement):
        """The augmentation on P_{-1}: the coefficient of e.e."""
        if elt.level != -1:
            raise ValueError("augmentation applies to level -1")
        return elt.coefficient(EMPTY_WORD, self.e_chain)

    def delta(self, n: int, m: Word, chain: Chain) -> ModuleElement:
        """delta_n on the basis element m.t."""
        field = self.field
        if n == 0:
            nf = self.system.normal_form_word(Word(m.chars + chain.word.chars))
            return ModuleElement(
                -1, {(w, self.e_chain): c for w, c in nf.items()}, field)
        if n == 1:
            head = chain.word.chars[:-1]
            x = self._t0_by_char[chain.word.chars[-1]]
            nf = self.system.normal_form_word(Word(m.chars + head))
            return ModuleElement(0, {(w, x): c for w, c in nf.items()}, field)
        if n == 2:
            u = chain.u
            m2 = self._t1_by_chars[chain.right_lhs.chars]
            nf = self.system.normal_form_word(Word(m.chars + u.chars))
            return ModuleElement(1, {(w, m2): c for w, c in nf.items()}, field)
        raise ValueError(f"no delta at level {n}")

    def jmap(self, n: int, m: Word, chain: Chain) -> Optional[ModuleElement]:
        """j_n on the basis element m.(chain); None encodes 0.

        j_0(ux.e) = u.x; j_1(m.x) = u.vx when m = uv with vx in T_1;
        j_2(m.t) = u.vt when m = uv with vt in T_2.  Factorizations are
        unique because T_1 is an anti-chain and T_2 tips are minimal.
        """
        field = self.field
        if n == 0:
            if m.is_empty:
                return None
            x = self._t0_by_char[m.chars[-1]]
            return ModuleElement.basis(Word(m.chars[:-1]), x, field)
        lookup = self._t1_by_chars if n == 1 else self._t2_by_chars
        suffix = chain.word.chars
        hits: list[tuple[str, str]] = []
        for i in range(len(m.chars) + 1):
            cand = m.chars[i:] + suffix
            if cand in lookup:
                hits.append((m.chars[:i], cand))
        if not hits:
            return None
        if len(hits) > 1:
            raise ChainError(
                f"ambiguous factorization of {m}.{chain.word}: basis not "
                f"reduced")
        u, cand = hits[0]
        return ModuleElement.basis(Word(u), lookup[cand], field)

    def d_chain(self, n: int, chain: Chain) -> ModuleElement:
        """d_n(.t), memoized."""
        key = (n, chain)
        hit = self._d_memo.get(key)
        if hit is not None:
            return hit
        if n == 0:
            result = self.delta(0, EMPTY_WORD, chain)
        else:
            dl = self.delta(n, EMPTY_WORD, chain)
            result = dl - self.splitting(n - 1, self.d(n - 1, dl))
        self._d_memo[key] = result
        return result

    def d(self, n: int, elt: ModuleElement) -> ModuleElement:
        """The differential extended module-linearly."""
        if elt.level != n:
            raise ValueError(f"element of level {elt.level} fed to d_{n}")
        out = ModuleElement.zero(n - 1, self.field)
        for (m, t), c in elt.items():
            out = out + self.act(m, self.d_chain(n, t)).scale(c)
        return out

    def leading_basis_term(self, elt: ModuleElement):
        return max(elt.terms.items(), key=lambda kv: self.pair_key(*kv[0]))

    def splitting(self, n: int, f: ModuleElement) -> ModuleElement:
        """i_n on ker(d_{n-1}) (ker of the augmentation for n = 0).

        Implemented as a worklist that strips the leading basis term with
        j_n and subtracts the corresponding boundary; the leading term drops
        strictly at every step, and a step budget converts any
        non-termination bug into an error.
        """
        if f.level != n - 1:
            raise ValueError(f"element of level {f.level} fed to i_{n}")
        field = self.field
        if n == 0:
            out: dict[tuple[Word, Chain], object] = {}
            for (m, t), c in f.items():
                if m.is_empty:
                    raise SplittingError("element is not in ker(augmentation)")
                x = self._t0_by_char[m.chars[-1]]
                key = (Word(m.chars[:-1]), x)
                s = field.add(out.get(key, 0), c)
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
            return ModuleElement(0, out, field, _clean=True)
        budget = 16
        for d in f.degrees():
            budget += 4 * max(1, self.module_dimension(n, d))
        result = ModuleElement.zero(n, field)
        work = f
        while not work.is_zero:
            budget -= 1
            if budget < 0:
                raise SplittingError(
                    "splitting recursion exceeded its step budget")
            (m, t), c = self.leading_basis_term(work)
            image = self.jmap(n, m, t)
            if image is None:
                raise SplittingError(
                    f"leading term {m}.{t.word} admits no chain "
                    f"factorization; input is not a boundary")
            image = image.scale(c)
            result = result + image
            ((jm, jt), jc), = image.items()
            work = work - self.act(jm, self.d_chain(n, jt)).scale(jc)
        return result

    # -- certificates -----------------------------------------------------------

    def complex_check(self, deg_bound: int) -> dict:
        """eps.d0, d0.d1 and d1.d2 vanish on every basis element m.t with
        total weight <= deg_bound."""
        failures = []
        counts = {"eps_d0": 0, "d0_d1": 0, "d1_d2": 0}
        for level, name in ((0, "eps_d0"), (1, "d0_d1"), (2, "d1_d2")):
            for t in self.chains(level):
                room = deg_bound - t.degree.norm
                if room < 0:
                    continue
                self._ensure_words(room)
                for md, words in sorted(self._words_by_degree.items()):
                    if md.norm > room:
                        continue
                    for m in words:
                        counts[name] += 1
                        elt = ModuleElement.basis(m, t, self.field)
                        image = self.d(level, elt)
                        if level == 0:
                            ok = self.epsilon(image) == 0
                        else:
                            ok = self.d(level - 1, image).is_zero
                        if not ok:
                            failures.append((name, str(m), str(t.word)))
        return {"checked": counts, "failures": failures,
                "ok": not failures}

    def matrix(self, n: int, degree: Degree,
               source_chains: Optional[Sequence[Chain]] = None,
               target_chains: Optional[Sequence[Chain]] = None,
               dmap: Optional[Callable[[Chain], ModuleElement]] = None
               ) -> GradedMatrix:
        """The matrix of d_n (or of a supplied chain map) in one degree."""
        cols = self.basis(n, degree, source_chains)
        rows = self.basis(n - 1, degree, target_chains)
        index = {(m.chars, t): i for i, (m, t) in enumerate(rows)}
        zero = 0 if self.field.characteristic else Fraction(0)
        entries = [[zero] * len(cols) for _ in rows]
        for jcol, (m, t) in enumerate(cols):
            image = self.act(m, self.d_chain(n, t) if dmap is None
                             else dmap(t))
            for (w, tt), c in image.items():
                entries[index[(w.chars, tt)]][jcol] = c
        return GradedMatrix(degree, rows, cols, entries)

    def relevant_degrees(self, deg_bound: int) -> list[Degree]:
        """Degrees (<= bound) in which some P_n has a nonzero component."""
        self._ensure_words(deg_bound)
        out: set[Degree] = set()
        for level in (-1, 0, 1, 2):
            for t in self.chains(level):
                base = t.degree
                if base.norm > deg_bound:
                    continue
                for md in self._words_by_degree:
                    d = base + md
                    if d.norm <= deg_bound:
                        out.add(d)
        return sorted(out)

    def exactness_check(self, deg_bound: int) -> list[DegreeReport]:
        """Rank-nullity certificates per degree: the complex is exact at P_0
        and P_1, and the augmentation is exact too."""
        reports = []
        for degree in self.relevant_degrees(deg_bound):
            dims = {level: self.module_dimension(level, degree)
                    for level in (-1, 0, 1, 2)}
            r0 = self.matrix(0, degree).rank(self.field)
            r1 = self.matrix(1, degree).rank(self.field)
            r2 = self.matrix(2, degree).rank(self.field)
            ker_eps = dims[-1] - (1 if degree == Degree(0, 0) else 0)
            reports.append(DegreeReport(
                degree=degree,
                dims=dims,
                ranks={"d0": r0, "d1": r1, "d2": r2},
                exact_at_augmentation=(r0 == ker_eps),
                exact_at_p0=(dims[0] - r0 == r1),
                exact_at_p1=(dims[1] - r1 == r2),
            ))
        return reports


def t1_set(system: RewriteSystem) -> tuple[Chain, ...]:
    return AnickComplex(system).t1


def t2_set(system: RewriteSystem) -> tuple[Chain, ...]:
    return AnickComplex(system).t2
