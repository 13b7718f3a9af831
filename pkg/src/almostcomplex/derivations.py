"""Derivations of the form algebra attached to vector-valued forms.

A vector-valued k-form K = K^j (x) e_j induces two derivations of the graded
algebra of forms: the algebraic derivation

    iota_K alpha = K^j ^ (iota_{e_j} alpha)          (degree k - 1),

which vanishes on functions, and the Lie-type derivation

    L_K alpha = iota_K(d alpha) - (-1)^(k-1) d(iota_K alpha)   (degree k),

the graded commutator of iota_K with d.  The exterior derivative itself is
L_I for the identity endomorphism I.

For an almost complex structure J (J o J = -identity) the Nijenhuis tensor

    N(X, Y) = [X, Y] + J[JX, Y] + J[X, JY] - [JX, JY]

is assembled frame pair by frame pair, and the twist of d is

    dc = J^{-1} d J = -L_J - iota_{J.N},   (J.N)(X, Y) = J(N(JX, JY)),

where J acts on a k-form by (J.alpha)(X_1, ..., X_k) = alpha(JX_1, ..., JX_k)
and J^{-1} = -J.  The identity suite at the bottom checks all of these
relations on seeded pseudorandom forms and reports a counterexample on any
failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coeffring import GaussianRational, TrigPoly, rat
from .errors import ModelMismatch
from .frames import (
    Form,
    Model,
    VectorField,
    VectorForm,
    ext_d,
    interior_vector,
    merge_signed,
    vf_bracket,
    wedge,
)


def iota_vform(K, a):
    """Algebraic derivation iota_K alpha = sum_j K^j ^ (iota_{e_j} alpha)."""
    if K.model != a.model:
        raise ModelMismatch("vector form and form live on different models")
    model = a.model
    degree = a.degree + K.degree - 1
    if a.degree == 0:
        return Form.zero(model, max(degree, 0))
    total = Form.zero(model, degree)
    for j in range(model.n):
        Kj = K.parts[j]
        if Kj.is_zero():
            continue
        contracted = interior_vector(VectorField.frame(model, j), a)
        if contracted.is_zero():
            continue
        total = total + wedge(Kj, contracted)
    return total


def lie_vform(K, a):
    """Nijenhuis-Lie derivation L_K = [iota_K, d]."""
    k = K.degree
    left = iota_vform(K, ext_d(a))
    right = ext_d(iota_vform(K, a))
    if (k - 1) % 2 == 0:
        return left - right
    return left + right


def nijenhuis(J):
    """The Nijenhuis tensor of an almost complex structure, as a vector-valued
    2-form.  Exactness of J o J = -identity is checked first."""
    J.require_almost_complex()
    model = J.model
    n = model.n
    frames = [VectorField.frame(model, i) for i in range(n)]
    jframes = [J.apply_vector(X) for X in frames]
    parts_comps = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            X, Y = frames[i], frames[j]
            JX, JY = jframes[i], jframes[j]
            value = (
                vf_bracket(X, Y)
                + J.apply_vector(vf_bracket(JX, Y))
                + J.apply_vector(vf_bracket(X, JY))
                - vf_bracket(JX, JY)
            )
            for l in range(n):
                f = value.comps[l]
                if not f.is_zero():
                    parts_comps[l][(i, j)] = f
    parts = [Form(model, 2, comps) for comps in parts_comps]
    return VectorForm(model, 2, parts)


def jn_twist_tensor(J, N=None):
    """(J.N)(X, Y) = J(N(JX, JY)), assembled over frame pairs."""
    if N is None:
        N = nijenhuis(J)
    if J.model != N.model:
        raise ModelMismatch("J and N live on different models")
    model = J.model
    n = model.n
    frames = [VectorField.frame(model, i) for i in range(n)]
    jframes = [J.apply_vector(X) for X in frames]
    parts_comps = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = J.apply_vector(N.apply_vectors([jframes[i], jframes[j]]))
            for l in range(n):
                f = value.comps[l]
                if not f.is_zero():
                    parts_comps[l][(i, j)] = f
    parts = [Form(model, 2, comps) for comps in parts_comps]
    return VectorForm(model, 2, parts)


def form_J_action(J, a):
    """The algebra automorphism alpha -> alpha(J., ..., J.).

    It fixes functions, acts by the transpose of J on the coframe, and is
    extended multiplicatively to higher degrees.
    """
    if J.model != a.model:
        raise ModelMismatch("J and form live on different models")
    model = a.model
    if a.degree == 0:
        return a
    # J.e^j is the 1-form X -> e^j(JX), which is exactly the j-th part of J.
    twisted_coframe = J.parts
    total = Form.zero(model, a.degree)
    for I, f in a.comps.items():
        prod = None
        for idx in I:
            t = twisted_coframe[idx]
            prod = t if prod is None else wedge(prod, t)
            if prod.is_zero():
                break
        else:
            total = total + prod.scale(f)
    return total


def dc(J, a):
    """The twist of the exterior derivative by J: dc = J^{-1} d J.

    The inverse action on a form of degree m is (-1)^m times the J action,
    because J^{-1} = -J for an almost complex structure.
    """
    J.require_almost_complex()
    inner = ext_d(form_J_action(J, a))
    out = form_J_action(J, inner)
    if inner.degree % 2:
        out = -out
    return out


# ---------------------------------------------------------------------------
# Identity suite
# ---------------------------------------------------------------------------

@dataclass
class IdentityCheck:
    name: str
    passed: bool
    samples: int
    counterexample: str | None = None


@dataclass
class IdentityReport:
    model_name: str
    seed: int
    samples: int
    checks: list = field(default_factory=list)

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def failed_names(self):
        return [c.name for c in self.checks if not c.passed]


def random_trig(rng, model, max_mode=1, terms=2):
    """Small random real ring element, reproducible from the rng state."""
    n = model.n
    if not model.is_torus:
        return model.constant_fn(rat(rng.randint(-3, 3), rng.randint(1, 3)))
    total = TrigPoly.zero(n)
    for _ in range(terms):
        mode = tuple(rng.randint(-max_mode, max_mode) for _ in range(n))
        c = rat(rng.randint(-3, 3), rng.randint(1, 3))
        if not any(mode):
            total = total + TrigPoly.constant(n, c)
        elif rng.random() < 0.5:
            total = total + TrigPoly.cos_mode(n, mode).scale(c)
        else:
            total = total + TrigPoly.sin_mode(n, mode).scale(c)
    return total


def random_form(rng, model, degree, comps=2, max_mode=1):
    """Random real form of the given degree with sparse components."""
    from itertools import combinations

    indices = list(combinations(range(model.n), degree))
    out = Form.zero(model, degree)
    for _ in range(comps):
        I = indices[rng.randrange(len(indices))]
        out = out + Form(model, degree, {I: random_trig(rng, model, max_mode)})
    return out


def identity_suite(model, J, samples=20, seed=2017, nijenhuis_override=None):
    """Check the derivation identities on seeded pseudorandom forms.

    Seven families are exercised per degree: the derivation (Leibniz) rules
    for iota_K and L_K, the one-form contraction formula, the graded
    commutators of d with L_J and L_N, the square L_J^2 = -L_N, the
    commutator [L_J, L_N] = 0, the degree-0 and top-degree reductions of L_J,
    and the decomposition dc = -L_J - iota_{J.N}.  Failures are data: each
    check reports pass/fail with a rendered counterexample.

    `nijenhuis_override` substitutes a (possibly corrupted) tensor for the
    computed one; the suite is expected to flag exactly the identities that
    the corruption breaks.
    """
    J.require_almost_complex()
    rng = random.Random(seed)
    N = nijenhuis_override if nijenhuis_override is not None else nijenhuis(J)
    JN = jn_twist_tensor(J, N)
    I = VectorForm.identity(model)
    n = model.n
    report = IdentityReport(model.name, seed, samples)

    def sample_forms(degree, count):
        return [random_form(rng, model, degree) for _ in range(count)]

    def run_check(name, fn):
        counter = fn()
        report.checks.append(
            IdentityCheck(name, counter is None, samples, counter)
        )

    def describe(form, label):
        return "%s: degree %d, %s" % (label, form.degree, form.render())

    # (i) Leibniz rules for iota_K and L_K, K in {J, N}, plus L_I = d.
    def leibniz():
        for _ in range(samples):
            p = rng.randint(0, n - 1)
            q = rng.randint(0, n - p)
            a = random_form(rng, model, p)
            b = random_form(rng, model, q)
            for K, k in ((J, 1), (N, 2)):
                lhs = iota_vform(K, wedge(a, b))
                sign = -1 if ((k - 1) * p) % 2 else 1
                rhs = wedge(iota_vform(K, a), b) + wedge(a, iota_vform(K, b)).scale(sign)
                if not (lhs - rhs).is_zero():
                    return describe(a, "iota Leibniz failed, left factor")
                lhs = lie_vform(K, wedge(a, b))
                sign = -1 if (k * p) % 2 else 1
                rhs = wedge(lie_vform(K, a), b) + wedge(a, lie_vform(K, b)).scale(sign)
                if not (lhs - rhs).is_zero():
                    return describe(a, "L Leibniz failed, left factor")
            c = random_form(rng, model, rng.randint(0, n))
            if not (lie_vform(I, c) - ext_d(c)).is_zero():
                return describe(c, "L_identity != d")
        return None

    run_check("leibniz_derivations", leibniz)

    # (ii) One-form contraction: (iota_K a)(X_1..X_k) = a(K(X_1..X_k)).
    def contraction():
        from itertools import combinations

        for _ in range(max(1, samples // 4)):
            a = random_form(rng, model, 1)
            for K, k in ((J, 1), (N, 2)):
                ia = iota_vform(K, a)
                for idx in combinations(range(n), k):
                    vectors = [VectorField.frame(model, i) for i in idx]
                    lhs = ia.evaluate(vectors)
                    rhs = a.evaluate([K.apply_vectors(vectors)])
                    if not (lhs - rhs).is_zero():
                        return describe(a, "contraction failed at %r" % (idx,))
        return None

    run_check("one_form_contraction", contraction)

    # (iii) Graded commutators of d with L_J and L_N.
    def d_commutators():
        for _ in range(samples):
            a = random_form(rng, model, rng.randint(0, n))
            if not (ext_d(lie_vform(J, a)) + lie_vform(J, ext_d(a))).is_zero():
                return describe(a, "d L_J + L_J d != 0")
            if not (ext_d(lie_vform(N, a)) - lie_vform(N, ext_d(a))).is_zero():
                return describe(a, "d L_N - L_N d != 0")
        return None

    run_check("d_commutators", d_commutators)

    # (iv) L_J^2 = -L_N.
    def lj_squared():
        for _ in range(samples):
            a = random_form(rng, model, rng.randint(0, n))
            if not (lie_vform(J, lie_vform(J, a)) + lie_vform(N, a)).is_zero():
                return describe(a, "L_J^2 + L_N != 0")
        return None

    run_check("LJ_squared_is_minus_LN", lj_squared)

    # (v) [L_J, L_N] = 0.
    def lj_ln():
        for _ in range(samples):
            a = random_form(rng, model, rng.randint(0, n))
            lhs = lie_vform(J, lie_vform(N, a)) - lie_vform(N, lie_vform(J, a))
            if not lhs.is_zero():
                return describe(a, "[L_J, L_N] != 0")
        return None

    run_check("LJ_LN_commute", lj_ln)

    # (vi) L_J = iota_J d on degree 0 and L_J = -d iota_J on top degree.
    def lj_special():
        for _ in range(samples):
            f = random_form(rng, model, 0)
            if not (lie_vform(J, f) - iota_vform(J, ext_d(f))).is_zero():
                return describe(f, "L_J != iota_J d on functions")
            t = random_form(rng, model, n)
            if not (lie_vform(J, t) + ext_d(iota_vform(J, t))).is_zero():
                return describe(t, "L_J != -d iota_J on top degree")
        return None

    run_check("LJ_degree_special_cases", lj_special)

    # (vii) dc = -L_J - iota_{J.N}.
    def dc_decomposition():
        for _ in range(samples):
            a = random_form(rng, model, rng.randint(0, n))
            rhs = -lie_vform(J, a) - iota_vform(JN, a)
            if not (dc(J, a) - rhs).is_zero():
                return describe(a, "dc != -L_J - iota_{J.N}")
        return None

    run_check("dc_decomposition", dc_decomposition)

    return report
