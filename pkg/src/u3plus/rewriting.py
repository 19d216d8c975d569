"""Rewriting systems over free associative algebras.

A rule replaces occurrences of its leading monomial by a strictly smaller
polynomial; a system bundles rules with a monoidal artinian order, which
guarantees that exhaustive rewriting terminates.  On top of one-step and full
reduction the module provides overlap enumeration, critical-pair reducibility,
completeness and reducedness certificates, subalphabet restriction, bounded
irreducible-word enumeration, and a bounded completion loop.

Reduction strategy (fixed so golden outputs are deterministic): rewrite the
order-greatest reducible monomial at its leftmost redex, preferring the rule
with the longest left-hand side, ties broken by rule index.  Normal forms are
computed per word and memoized on the system; for complete systems the result
is strategy-independent anyway.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .free_algebra import (
    FieldSpec,
    FreeAlgebraError,
    Generator,
    OrderSpec,
    Polynomial,
    Word,
)


class RewriteSystemError(FreeAlgebraError):
    """Invalid rule or system construction."""


class RestrictionError(FreeAlgebraError):
    """Subalphabet restriction hypothesis fails for some rule."""

    def __init__(self, rule: "RewriteRule", message: str):
        super().__init__(message)
        self.rule = rule


class CompletionBudgetError(FreeAlgebraError):
    """Bounded completion did not stabilize within its round budget."""


@dataclass(frozen=True)
class RewriteRule:
    """lhs -> rhs with every rhs monomial strictly below lhs."""

    lhs: Word
    rhs: Polynomial

    def as_polynomial(self) -> Polynomial:
        """The defining polynomial lhs - rhs."""
        return Polynomial.monomial(self.lhs, self.rhs.field) - self.rhs

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


def rule_from_poly(p: Polynomial, order: OrderSpec) -> RewriteRule:
    """Orient a nonzero polynomial into the monic rule lm(p) -> lower part."""
    if p.is_zero:
        raise RewriteSystemError("cannot orient the zero polynomial")
    lm, lc = p.leading_term(order)
    rest = Polynomial({w: c for w, c in p.items() if w != lm}, p.field,
                      _clean=True)
    rhs = rest.scale(p.field.neg(p.field.invert(lc)))
    return RewriteRule(lm, rhs)


@dataclass(frozen=True)
class CriticalPair:
    """Two rules meeting on one word.

    ``overlap``:      tip = lhs1 . v = u . lhs2, with a nonempty proper
                      overlap (rule 1 matches at position 0, rule 2 ends the
                      tip);
    ``containment``:  tip = lhs1 = u . lhs2 . v, rule 2's monomial inside
                      rule 1's.
    """

    tip: Word
    rule1: int
    rule2: int
    u: Word
    v: Word
    case: str

    def __str__(self) -> str:
        return f"tip {self.tip} (rules {self.rule1},{self.rule2}, {self.case})"


def spolynomial(system: "RewriteSystem", cp: CriticalPair) -> Polynomial:
    """rhs difference of the two reductions of the tip; 0-reducibility of all
    of these is exactly completeness."""
    r1 = system.rules[cp.rule1]
    r2 = system.rules[cp.rule2]
    fld = system.field
    um = Polynomial.monomial(cp.u, fld)
    vm = Polynomial.monomial(cp.v, fld)
    if cp.case == "overlap":
        return r1.rhs * vm - um * r2.rhs
    return r1.rhs - um * r2.rhs * vm


def find_overlaps(m1: Word, m2: Word) -> list[tuple[Word, Word, Word, str]]:
    """All overlap and containment skeletons of two monomials.

    Returns tuples ``(tip, u, v, case)``:

    * ``overlap``: a nonempty proper suffix of ``m1`` equals a proper prefix
      of ``m2``; ``tip = m1.v = u.m2``;
    * ``containment``: ``m2`` is a proper factor of ``m1``;
      ``tip = m1 = u.m2.v`` (one entry per occurrence).
    """
    out: list[tuple[Word, Word, Word, str]] = []
    s1, s2 = m1.chars, m2.chars
    for ov in range(1, min(len(s1), len(s2))):
        if s1[-ov:] == s2[:ov]:
            out.append((Word(s1 + s2[ov:]), Word(s1[:-ov]), Word(s2[ov:]),
                        "overlap"))
    if len(s2) < len(s1):
        start = 0
        while True:
            pos = s1.find(s2, start)
            if pos < 0:
                break
            out.append((m1, Word(s1[:pos]), Word(s1[pos + len(s2):]),
                        "containment"))
            start = pos + 1
    return out


@dataclass
class CompletenessCertificate:
    complete: bool
    pair_count: int
    failures: list[tuple[Word, Polynomial]]

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "pair_count": self.pair_count,
            "failures": [
                {"tip": list(tip.tokens), "residual": str(res)}
                for tip, res in self.failures
            ],
        }


class RewriteSystem:
    """An immutable set of rewriting rules with its order and alphabet."""

    def __init__(self, rules: Sequence[RewriteRule], order: OrderSpec,
                 field: FieldSpec, alphabet: Sequence[Generator]):
        self.order = order
        self.field = field
        self.alphabet = tuple(alphabet)
        self.rules = tuple(rules)
        seen: set[str] = set()
        for rule in self.rules:
            if rule.rhs.field != field:
                raise RewriteSystemError("rule field does not match system")
            if rule.lhs.chars in seen:
                raise RewriteSystemError(
                    f"duplicate left-hand side {rule.lhs}")
            seen.add(rule.lhs.chars)
            lk = order.key(rule.lhs)
            for w in rule.rhs.terms:
                if not order.key(w) < lk:
                    raise RewriteSystemError(
                        f"rule {rule} is not order-decreasing at {w}")
        # compiled form: (lhs chars, lhs length, rhs items descending)
        self._compiled = tuple(
            (r.lhs.chars, len(r.lhs.chars),
             tuple(sorted(((w.chars, c) for w, c in r.rhs.items()),
                          key=lambda item: order.key(item[0]), reverse=True)))
            for r in self.rules)
        # redex search strategy (leftmost, longest lhs, lowest rule index)
        # as one scan: alternation ordered by (-len, index); chunked to stay
        # clear of the regex group limit
        ranked = sorted(range(len(self.rules)),
                        key=lambda i: (-self._compiled[i][1], i))
        self._redex_chunks: list[tuple] = []
        for base in range(0, len(ranked), 80):
            block = ranked[base:base + 80]
            pattern = "|".join(
                f"(?P<g{i}>{re.escape(self._compiled[i][0])})" for i in block)
            self._redex_chunks.append((re.compile(pattern), block))
        self._nf_cache: dict[str, dict[str, object]] = {}

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_polynomials(cls, polys: Iterable[Polynomial], order: OrderSpec,
                         field: FieldSpec,
                         alphabet: Sequence[Generator]) -> "RewriteSystem":
        return cls([rule_from_poly(p, order) for p in polys], order, field,
                   alphabet)

    def with_rules(self, rules: Sequence[RewriteRule]) -> "RewriteSystem":
        return RewriteSystem(rules, self.order, self.field, self.alphabet)

    # -- redex search --------------------------------------------------------

    def _find_redex(self, chars: str) -> Optional[tuple[int, int]]:
        """(position, rule index) of the leftmost redex, longest lhs first."""
        best: Optional[tuple[int, int, int]] = None
        for rx, block in self._redex_chunks:
            m = rx.search(chars)
            if m is not None:
                idx = block[m.lastindex - 1]
                cand = (m.start(), -self._compiled[idx][1], idx)
                if best is None or cand < best:
                    best = cand
        if best is None:
            return None
        return best[0], best[2]

    def is_irreducible_word(self, w: Word) -> bool:
        return self._find_redex(w.chars) is None

    # -- normal forms ----------------------------------------------------------

    def _nf_chars(self, start: str) -> dict[str, object]:
        """Normal form of a single word, memoized.  Values are char-string ->
        coefficient maps."""
        cache = self._nf_cache
        hit = cache.get(start)
        if hit is not None:
            return hit
        fld = self.field
        p = fld.characteristic
        compiled = self._compiled
        find_redex = self._find_redex
        # pending: word -> (rhs coefficient list, child words), so the redex
        # search runs once per word no matter how often the DFS revisits it
        pending: dict[str, tuple] = {}
        stack = [start]
        while stack:
            x = stack[-1]
            if x in cache:
                stack.pop()
                continue
            info = pending.get(x)
            if info is None:
                red = find_redex(x)
                if red is None:
                    cache[x] = {x: fld.coerce(1)}
                    stack.pop()
                    continue
                pos, idx = red
                _, ln, rhs_items = compiled[idx]
                u = x[:pos]
                v = x[pos + ln:]
                info = (rhs_items, tuple(u + t + v for t, _ in rhs_items))
                pending[x] = info
            rhs_items, children = info
            missing = [c for c in children if c not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[str, object] = {}
            for (t, coeff), child in zip(rhs_items, children):
                for wm, cm in cache[child].items():
                    s = acc.get(wm, 0) + coeff * cm
                    if p:
                        s %= p
                    if s:
                        acc[wm] = s
                    elif wm in acc:
                        del acc[wm]
            cache[x] = acc
            del pending[x]
            stack.pop()
        return cache[start]

    def normal_form(self, f: Polynomial) -> Polynomial:
        """NF(f): exhaustive reduction; unique for complete systems."""
        if f.field != self.field:
            raise RewriteSystemError("polynomial field does not match system")
        fld = self.field
        p = fld.characteristic
        acc: dict[str, object] = {}
        for w, c in f.items():
            for wm, cm in self._nf_chars(w.chars).items():
                s = acc.get(wm, 0) + c * cm
                if p:
                    s %= p
                if s:
                    acc[wm] = s
                elif wm in acc:
                    del acc[wm]
        return Polynomial({Word(chars): c for chars, c in acc.items()},
                          fld, _clean=True)

    def normal_form_word(self, w: Word) -> Polynomial:
        return Polynomial({Word(chars): c
                           for chars, c in self._nf_chars(w.chars).items()},
                          self.field, _clean=True)

    def reduce_once(self, g: Polynomial) -> Optional[Polynomial]:
        """One reduction step per the fixed strategy, or None if irreducible."""
        if g.field != self.field:
            raise RewriteSystemError("polynomial field does not match system")
        keyfn = self.order.key
        for w in sorted(g.terms, key=keyfn, reverse=True):
            red = self._find_redex(w.chars)
            if red is None:
                continue
            pos, idx = red
            lhs, ln, _ = self._compiled[idx]
            coeff = g.terms[w]
            u = Polynomial.monomial(Word(w.chars[:pos]), self.field)
            v = Polynomial.monomial(Word(w.chars[pos + ln:]), self.field)
            replaced = (u * self.rules[idx].rhs * v).scale(coeff)
            rest = Polynomial({x: c for x, c in g.items() if x != w},
                              self.field, _clean=True)
            return rest + replaced
        return None

    # -- certificates ----------------------------------------------------------

    def critical_pairs(self) -> tuple[CriticalPair, ...]:
        """All overlaps and containments between ordered rule pairs."""
        out: list[CriticalPair] = []
        seen: set[tuple] = set()
        for i, r1 in enumerate(self.rules):
            for j, r2 in enumerate(self.rules):
                for tip, u, v, case in find_overlaps(r1.lhs, r2.lhs):
                    key = (tip.chars, i, j, u.chars, case)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(CriticalPair(tip, i, j, u, v, case))
        out.sort(key=lambda cp: (self.order.key(cp.tip), cp.rule1, cp.rule2,
                                 len(cp.u.chars), cp.case))
        return tuple(out)

    def pair_is_reducible(self, cp: CriticalPair) -> bool:
        return self.normal_form(spolynomial(self, cp)).is_zero

    def is_complete(self) -> CompletenessCertificate:
        """Check every critical pair; failures carry the nonzero residual."""
        failures: list[tuple[Word, Polynomial]] = []
        pairs = self.critical_pairs()
        for cp in pairs:
            residual = self.normal_form(spolynomial(self, cp))
            if not residual.is_zero:
                failures.append((cp.tip, residual))
        return CompletenessCertificate(not failures, len(pairs), failures)

    def is_reduced(self) -> bool:
        """No rule's monomials contain another rule's lhs as a factor."""
        lhs_chars = [r.lhs.chars for r in self.rules]
        for i, rule in enumerate(self.rules):
            for j, other in enumerate(lhs_chars):
                if i != j and other in rule.lhs.chars:
                    return False
            for w in rule.rhs.terms:
                if any(other in w.chars for other in lhs_chars):
                    return False
        return True

    # -- derived systems -------------------------------------------------------

    def restrict_to_subalphabet(self, gens: Iterable[Generator]
                                ) -> "RewriteSystem":
        """Keep the rules whose lhs lies in the subalphabet; their rhs must
        stay inside too, otherwise the restriction hypothesis fails."""
        allowed = {g.char for g in gens}
        kept: list[RewriteRule] = []
        for rule in self.rules:
            if not set(rule.lhs.chars) <= allowed:
                continue
            for w in rule.rhs.terms:
                if not set(w.chars) <= allowed:
                    raise RestrictionError(
                        rule, f"rule {rule} leaves the subalphabet "
                        f"(offending monomial {w})")
            kept.append(rule)
        sub_alpha = tuple(g for g in self.alphabet if g.char in allowed)
        return RewriteSystem(kept, self.order, self.field, sub_alpha)

    def irreducible_words(self, deg_bound: int) -> list[Word]:
        """All words of total weight <= deg_bound with no lhs factor."""
        lhs_chars = [r.lhs.chars for r in self.rules]
        out: list[Word] = []
        letters = [(g.char, g.degree.norm) for g in self.alphabet]

        def extend(chars: str, norm: int) -> None:
            out.append(Word(chars))
            for ch, dn in letters:
                if norm + dn > deg_bound:
                    continue
                cand = chars + ch
                if any(cand.endswith(l) for l in lhs_chars):
                    continue
                extend(cand, norm + dn)

        extend("", 0)
        out.sort(key=self.order.key)
        return out

    def __repr__(self) -> str:
        return (f"RewriteSystem({len(self.rules)} rules over "
                f"{self.field}, {self.order!r})")


def is_complete(system: RewriteSystem) -> CompletenessCertificate:
    return system.is_complete()


def is_reduced(system: RewriteSystem) -> bool:
    return system.is_reduced()


def normal_form(f: Polynomial, system: RewriteSystem) -> Polynomial:
    return system.normal_form(f)


def reduce_once(g: Polynomial, system: RewriteSystem) -> Optional[Polynomial]:
    return system.reduce_once(g)


def critical_pairs(system: RewriteSystem) -> tuple[CriticalPair, ...]:
    return system.critical_pairs()


def restrict_to_subalphabet(system: RewriteSystem,
                            gens: Iterable[Generator]) -> RewriteSystem:
    return system.restrict_to_subalphabet(gens)


def irreducible_words(system: RewriteSystem, deg_bound: int) -> list[Word]:
    return system.irreducible_words(deg_bound)


# --------------------------------------------------------------------------
# interreduction and bounded completion
# --------------------------------------------------------------------------


def interreduce(system: RewriteSystem) -> RewriteSystem:
    """Reduce every rule by the others until the basis is reduced.

    Preserves the two-sided ideal generated by the rule polynomials.
    """
    order = system.order
    field = system.field
    polys = [r.as_polynomial() for r in system.rules]
    changed = True
    while changed:
        changed = False
        polys.sort(key=lambda q: order.key(q.leading_monomial(order)))
        for i in range(len(polys)):
            others = polys[:i] + polys[i + 1:]
            if not others:
                continue
            sub = RewriteSystem.from_polynomials(
                others, order, field, system.alphabet)
            reduced = sub.normal_form(polys[i])
            if reduced.is_zero:
                del polys[i]
                changed = True
                break
            if reduced != polys[i]:
                lc = reduced.leading_term(order)[1]
                polys[i] = reduced.scale(field.invert(lc))
                changed = True
                break
    return RewriteSystem.from_polynomials(polys, order, field,
                                          system.alphabet)


def complete(system: RewriteSystem, deg_bound: int,
             max_rounds: int = 64) -> RewriteSystem:
    """Bounded Knuth-Bendix completion.

    Adds oriented residuals of failing critical pairs whose tip has total
    weight <= deg_bound, interreducing after every batch, until all bounded
    pairs are reducible.
    """
    work = interreduce(system)
    for _ in range(max_rounds):
        additions: list[Polynomial] = []
        seen_lms: set[str] = set()
        for cp in work.critical_pairs():
            if cp.tip.degree.norm > deg_bound:
                continue
            residual = work.normal_form(spolynomial(work, cp))
            if residual.is_zero:
                continue
            lm = residual.leading_monomial(work.order)
            if lm.chars in seen_lms:
                continue
            seen_lms.add(lm.chars)
            additions.append(residual)
        if not additions:
            return work
        polys = [r.as_polynomial() for r in work.rules] + additions
        work = interreduce(RewriteSystem.from_polynomials(
            polys, work.order, work.field, work.alphabet))
    raise CompletionBudgetError(
        f"completion did not stabilize in {max_rounds} rounds")
