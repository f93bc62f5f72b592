//! Fixed registry of the mathematical claims the verification suites check.
//! Every suite item carries one of these keys; the registry text states the
//! claim in full so a report is readable on its own.

/// Keys and claim texts, sorted by key.
pub const ANCHORS: &[(&str, &str)] = &[
    (
        "agemo-center",
        "In C_p wr C_p the subgroup generated by all p-th powers equals the center and has order p.",
    ),
    (
        "aut-center-transitive",
        "For a Sylow subgroup whose nontrivial elements are all conjugate in the ambient group, the normalizer acts transitively on the nontrivial elements of the center.",
    ),
    (
        "fusion-exponent-consequence",
        "Conjugation preserves element orders, so a p-group containing an element of order p^2 can never have all nontrivial elements conjugate in any ambient group.",
    ),
    (
        "fusion-necessary-conditions",
        "If all nontrivial elements of a finite p-group P are conjugate in some ambient group, then P has exponent p; if P is moreover nonabelian, its center lies inside its derived subgroup and P is directly indecomposable. Conjecturally P is elementary abelian or extraspecial of order p^3.",
    ),
    (
        "fusion-transitive-definition",
        "Taking the ambient group equal to P itself makes the fusion classes the ordinary conjugacy classes, so any P with more than one nontrivial conjugacy class is not fused transitively over itself.",
    ),
    (
        "fusion-transitive-example",
        "In the semidirect product of a two-dimensional vector space over GF(3) with a regularly acting quaternion group of order 8, the translation subgroup is a Sylow 3-subgroup and its eight nontrivial elements form a single conjugacy class of the ambient group.",
    ),
    (
        "gamma-semilinear-exponent",
        "For n = d*p, the extension of the additive group of GF(p^n) by the order-p field automorphism x -> x^(p^d) contains an element of order p^2: some twisted trace sum_{i<p} x^(p^(d*j*i)) is nonzero.",
    ),
    (
        "jordan-exponent",
        "For a matrix x over GF(p) with x^p = 1, the extension of the vector space by x has exponent p^2 exactly when some Jordan block of x has size p, equivalently when 1 + x + ... + x^(p-1) is nonzero.",
    ),
    (
        "max-agemo-noncyclic",
        "In the direct square of C_p wr C_p, every index-p subgroup projecting onto both factors has a noncyclic subgroup of p-th powers, which therefore cannot lie inside a cyclic center.",
    ),
    (
        "max-center-elem-abelian",
        "In the direct square of C_p wr C_p, every index-p subgroup projecting onto both factors has elementary abelian center.",
    ),
    (
        "monomial-order-p2",
        "When p^2 divides q - 1, the diagonal part of the monomial Sylow p-subgroup of SL_p(q) contains elements of order p^2.",
    ),
    (
        "monomial-outside-order",
        "Every element of the monomial Sylow p-subgroup of SL_p(q) outside its diagonal part has order p.",
    ),
    (
        "monomial-structure",
        "For odd p dividing q - 1, the monomial Sylow p-subgroup of SL_p(q) has order p^(e(p-1)+1) with e the p-adic valuation of q - 1, and its diagonal part is an abelian normal subgroup of index p and rank p - 1.",
    ),
    (
        "monomial-u-scan",
        "Every subgroup of order at least p^(p+1) of the monomial Sylow p-subgroup of SL_p(q) meets the diagonal part in an element of order p^2.",
    ),
    (
        "norm-surjective",
        "For every divisor d of n, the norm map from GF(p^n) onto GF(p^d) sending x to the product of its conjugates under x -> x^(p^d) is surjective.",
    ),
    (
        "order-p-count-square",
        "The direct square of C_p wr C_p contains exactly p^(2p-2)(2p-1)^2 elements of order dividing p, which is less than p^(2p+1); hence every subgroup of index p contains an element of order p^2.",
    ),
    (
        "order-p-union",
        "In C_p wr C_p the elements of order dividing p form a union of two maximal subgroups and number exactly p^(p-1)(2p-1).",
    ),
    (
        "plumbing",
        "Infrastructure bookkeeping for the suite run; no mathematical content.",
    ),
    (
        "sl-sp-sylow",
        "Sylow p-subgroups of SL_k(p^m) have order p^(m k(k-1)/2) and those of Sp_k(p^m) have order p^(m k^2/4); outside the single case SL_2(p) these orders exceed p.",
    ),
    (
        "sl2-13-exponent",
        "The six-dimensional representation of SL_2(13) over GF(3) has order 2184 and contains an order-3 element with a Jordan block of size 3, so extending GF(3)^6 by that element gives exponent 9.",
    ),
    (
        "symmetric-exponent",
        "The Sylow p-subgroup of the symmetric group S_n has exponent p^2 or more exactly when n >= p^2, so for p = 3 the first symmetric group whose Sylow 3-subgroup has exponent 9 is S_9.",
    ),
    (
        "symmetric-sylow-product",
        "The Sylow p-subgroup of S_n is a direct product, over the base-p digits a_i of n, of a_i copies of the i-fold iterated wreath product of C_p, and its order is p to the sum of floor(n/p^i) over i >= 1.",
    ),
    (
        "symmetric-sylow-structure",
        "That direct product has exponent p^(largest i with a_i > 0), center of order p^(a_1 + a_2 + ...), and derived subgroup of order equal to the product of (|W_i| / p^i)^(a_i), where W_i is the i-fold iterated wreath product.",
    ),
    (
        "wreath-exponent",
        "The wreath product C_p wr C_p has exponent exactly p^2.",
    ),
    (
        "wreath-iterate-order",
        "The threefold iterated wreath product of C_p contains elements of order at least p^3.",
    ),
];

pub fn anchor_text(key: &str) -> Option<&'static str> {
    ANCHORS
        .binary_search_by(|(k, _)| k.cmp(&key))
        .ok()
        .map(|i| ANCHORS[i].1)
}

pub fn anchor_keys() -> impl Iterator<Item = &'static str> {
    ANCHORS.iter().map(|(k, _)| *k)
}
