/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

#include "arthur/groth.hpp"

#include <cstdlib>

namespace arthur {

namespace {

int pow_sign(int base, long long exp) {
    return (base == -1 && exp % 2 != 0) ? -1 : +1;
}

Rat mod2(Rat x) {
    // Reduce into [0, 2).
    const long long q = rat_floor(x / 2);
    return x - Rat(2 * q);
}

long long jac_budget = 0;

void consume_budget() {
    require(--jac_budget > 0, "NonTermination",
            "Jacquet rewriting exceeded its termination budget");
}

} // namespace

std::string convention_str(EmptyBlockConvention c) {
    return c == EmptyBlockConvention::discard ? "discard" : "zero_unless_plus";
}

EmptyBlockConvention convention_parse(const std::string &s) {
    if (s == "discard")
        return EmptyBlockConvention::discard;
    if (s == "zero_unless_plus")
        return EmptyBlockConvention::zero_unless_plus;
    fail("InvalidInput", "unknown empty-block convention '" + s + "'");
}

EmptyBlockConvention frozen_convention() {
    if (const char *env = std::getenv("ARTHUR_KIT_CONVENTION"))
        return convention_parse(env);
    return EmptyBlockConvention::zero_unless_plus;
}

bool TwistChar::trivial() const {
    return eta_exp.empty() && omega_exp.empty() && chi_exp.empty();
}

TwistChar TwistChar::operator*(const TwistChar &o) const {
    TwistChar out = *this;
    for (const auto &[tag, e] : o.eta_exp) {
        const Rat v = mod2(out.eta_exp[tag] + e);
        if (v == Rat(0))
            out.eta_exp.erase(tag);
        else
            out.eta_exp[tag] = v;
    }
    for (const auto &[name, e] : o.omega_exp) {
        const Rat v = out.omega_exp[name] + e;
        if (v == Rat(0))
            out.omega_exp.erase(name);
        else
            out.omega_exp[name] = v;
    }
    for (const auto &[name, e] : o.chi_exp) {
        const long long v = out.chi_exp[name] + e;
        if (v == 0)
            out.chi_exp.erase(name);
        else
            out.chi_exp[name] = v;
    }
    return out;
}

std::string TwistChar::str() const {
    if (trivial())
        return "1";
    std::string s;
    for (const auto &[tag, e] : eta_exp)
        s += "eta(" + tag + ")^" + rat_str(e) + " ";
    for (const auto &[name, e] : omega_exp)
        s += "om(" + name + ")^" + rat_str(e) + " ";
    for (const auto &[name, e] : chi_exp)
        s += "chi(" + name + ")^" + std::to_string(e) + " ";
    s.pop_back();
    return s;
}

TwistChar eta_twist(const std::string &tag, const Rat &exp) {
    TwistChar t;
    if (tag != kTrivialTag && mod2(exp) != Rat(0))
        t.eta_exp[tag] = mod2(exp);
    return t;
}

TwistChar omega_twist(const std::string &rho_name, const Rat &exp) {
    TwistChar t;
    if (exp != Rat(0))
        t.omega_exp[rho_name] = exp;
    return t;
}

TwistChar chi_twist(const std::string &rho_name, long long exp) {
    TwistChar t;
    if (exp != 0)
        t.chi_exp[rho_name] = exp;
    return t;
}

long long Segment::length() const {
    const Rat d = to >= from ? to - from : from - to;
    return rat_floor(d) + 1;
}

std::vector<Rat> Segment::exponents() const {
    std::vector<Rat> out;
    const Rat step = to >= from ? Rat(1) : Rat(-1);
    Rat x = from;
    for (long long i = 0; i < length(); ++i, x += step)
        out.push_back(x);
    return out;
}

std::string Segment::str() const {
    return "<" + rat_str(from) + ".." + rat_str(to) + ">_" + rho.name;
}

std::string Atom::str() const {
    std::string s = classical ? "At0[" : "At[";
    s += family == Family::Sp ? "Sp;" : "SOe(" + discriminant + ");";
    for (const auto &ab : blocks)
        s += "(" + ab.block.rho.name + "," + std::to_string(ab.block.a) + "," +
             std::to_string(ab.block.b) + "," + (ab.block.zeta > 0 ? "+" : "-") +
             (ab.eta > 0 ? ";+" : ";-") + ")";
    for (const auto &n : notes)
        s += "{" + n.rho_name + "," + rat_str(n.B) + "," + (n.zeta > 0 ? "+" : "-") +
             (n.eta > 0 ? ";+" : ";-") + "}";
    return s + "]";
}

namespace {

// Basis of the group of sign characters on the dedup index set that are
// trivial on ker(alpha) and on s_0: the eta-system equivalence group at the
// similitude level (F2 nullspace of the constraint rows).
std::vector<SignVector> eta_equivalence_basis(const CentralizerDescriptor &desc) {
    const std::size_t k = desc.k();
    std::vector<std::vector<int>> rows;
    auto add_row = [&](const SignVector &v) {
        std::vector<int> r(k, 0);
        bool any = false;
        for (std::size_t i = 0; i < k; ++i)
            if (v[i] < 0) {
                r[i] = 1;
                any = true;
            }
        if (any)
            rows.push_back(std::move(r));
    };
    for (const auto &v : ker_alpha_lift(desc, /*intersect_S=*/false))
        add_row(v);
    add_row(desc.s0);

    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < k && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv][col])
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != r && rows[j][col])
                for (std::size_t c = 0; c < k; ++c)
                    rows[j][c] ^= rows[r][c];
        pivot_col.push_back((int)col);
        ++r;
    }
    std::vector<bool> is_pivot(k, false);
    for (int c : pivot_col)
        is_pivot[c] = true;
    std::vector<SignVector> basis;
    for (std::size_t free_col = 0; free_col < k; ++free_col) {
        if (is_pivot[free_col])
            continue;
        SignVector v(k, +1);
        v[free_col] = -1;
        for (std::size_t j = 0; j < r; ++j)
            if (rows[j][free_col])
                v[pivot_col[j]] = -1;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Canonical representative of the atom's eta-system modulo the equivalence
// group (applied only to fully elementary similitude atoms; note annotations
// are left untouched).
void canonicalize_eta(Atom &a) {
    if (a.classical || a.blocks.empty())
        return;
    for (const auto &ab : a.blocks)
        if (ab.block.A() > ab.block.B())
            return;
    const CentralizerDescriptor desc = build_centralizer(atom_parameter(a));
    const std::vector<SignVector> basis = eta_equivalence_basis(desc);
    if (basis.empty())
        return;
    require(basis.size() < 20, "InternalError", "eta equivalence group too large");

    auto apply = [&](const SignVector &delta) {
        std::vector<AnnotatedBlock> blocks = a.blocks;
        for (auto &ab : blocks)
            for (std::size_t i = 0; i < desc.k(); ++i)
                if (desc.jordan[i].rho.name == ab.block.rho.name &&
                    desc.jordan[i].a == ab.block.a && desc.jordan[i].b == ab.block.b)
                    ab.eta *= delta[i];
        std::sort(blocks.begin(), blocks.end());
        return blocks;
    };
    auto less = [](const std::vector<AnnotatedBlock> &x,
                   const std::vector<AnnotatedBlock> &y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    };

    std::vector<AnnotatedBlock> best = a.blocks;
    for (std::size_t m = 1; m < (std::size_t(1) << basis.size()); ++m) {
        SignVector delta(desc.k(), +1);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if ((m >> b) & 1)
                for (std::size_t i = 0; i < desc.k(); ++i)
                    delta[i] *= basis[b][i];
        std::vector<AnnotatedBlock> cand = apply(delta);
        if (less(cand, best))
            best = std::move(cand);
    }
    a.blocks = std::move(best);
}

} // namespace

Atom make_atom(Family family, bool classical, std::vector<AnnotatedBlock> blocks,
               std::vector<EmptyNote> notes) {
    Atom a;
    a.family = family;
    a.classical = classical;
    std::sort(blocks.begin(), blocks.end());
    std::sort(notes.begin(), notes.end());
    a.blocks = std::move(blocks);
    a.notes = std::move(notes);
    if (family == Family::SO_even) {
        TwistCharacterSymbol det;
        for (const auto &ab : a.blocks)
            det = det * twist_symbol(ab.block.eta_block());
        require(det.tags.size() <= 1, "TagProduct",
                "atom discriminant is a product of distinct tags");
        a.discriminant = det.tags.empty() ? kTrivialTag : *det.tags.begin();
    }
    canonicalize_eta(a);
    return a;
}

ArthurParameter atom_parameter(const Atom &atom) {
    ArthurParameter psi;
    long long n = 0;
    for (const auto &ab : atom.blocks) {
        psi.blocks.push_back({ab.block, 1});
        n += ab.block.n_block();
    }
    psi.group.family = atom.family;
    psi.group.discriminant = atom.discriminant;
    if (atom.family == Family::Sp) {
        require(n % 2 == 1, "InternalError", "atom dimension parity mismatch");
        psi.group.rank = (int)((n - 1) / 2);
    } else {
        require(n % 2 == 0, "InternalError", "atom dimension parity mismatch");
        psi.group.rank = (int)(n / 2);
    }
    psi.normalize();
    return psi;
}

std::string Term::key() const {
    switch (kind) {
    case Kind::atom:
        return atom.str();
    case Kind::ind:
        return "In[" + seg.str() + "]" + child->key();
    case Kind::jac:
        return "Jc[" + jrho.name + "," + rat_str(jx) + "]" + child->key();
    }
    return "";
}

TermPtr make_atom_term(Atom atom) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::atom;
    t->atom = std::move(atom);
    return t;
}

TermPtr make_ind(Segment seg, TermPtr child) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::ind;
    t->seg = std::move(seg);
    t->child = std::move(child);
    return t;
}

TermPtr make_jac(SupercuspidalLabel rho, const Rat &x, TermPtr child) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::jac;
    t->jrho = std::move(rho);
    t->jx = x;
    t->child = std::move(child);
    return t;
}

void FormalSum::add(TermPtr term, const TwistChar &twist, long long coeff) {
    if (coeff == 0)
        return;
    const std::string key = term->key() + "|" + twist.str();
    auto it = entries.find(key);
    if (it == entries.end()) {
        entries.emplace(key, Entry{std::move(term), twist, coeff});
        return;
    }
    it->second.coeff += coeff;
    if (it->second.coeff == 0)
        entries.erase(it);
}

void FormalSum::add_sum(const FormalSum &other, const TwistChar &twist, long long coeff) {
    for (const auto &[k, e] : other.entries)
        add(e.term, e.twist * twist, e.coeff * coeff);
}

bool FormalSum::operator==(const FormalSum &o) const {
    if (entries.size() != o.entries.size())
        return false;
    for (const auto &[k, e] : entries) {
        auto it = o.entries.find(k);
        if (it == o.entries.end() || it->second.coeff != e.coeff)
            return false;
    }
    return true;
}

std::pair<std::vector<std::vector<Rat>>, Rat> jac_shift_matrix(const JordanBlock &target,
                                                               long long T) {
    require(T >= 0, "InvalidInput", "shift T must be nonnegative");
    std::vector<std::vector<Rat>> rows;
    Rat total(0);
    const Rat A = target.A(), B = target.B();
    const Rat z(target.zeta);
    for (Rat r = B; r <= A; r += 1) {
        std::vector<Rat> row;
        for (long long j = T; j >= 1; --j) {
            row.push_back(z * (r + Rat(j)));
            total += row.back();
        }
        rows.push_back(std::move(row));
    }
    return {rows, total};
}

std::vector<Rat> jac_shift_sequence(const JordanBlock &target, long long T) {
    const auto [rows, total] = jac_shift_matrix(target, T);
    (void)total;
    std::vector<Rat> seq;
    for (long long j = 0; j < T; ++j) // column j, left to right
        for (const auto &row : rows)  // top to bottom
            seq.push_back(row[(std::size_t)j]);
    return seq;
}

namespace {

// -------------------------------------------------------------------------
// Normalization
// -------------------------------------------------------------------------

// Insert a segment above `tree`, bubbling it below canonically smaller
// segments (parabolic induction is commutative in the Grothendieck ring).
TermPtr insert_segment(const Segment &seg, TermPtr tree) {
    if (seg.length() <= 0)
        return tree;
    if (tree->kind == Term::Kind::ind && tree->seg.key() < seg.key())
        return make_ind(tree->seg, insert_segment(seg, tree->child));
    return make_ind(seg, std::move(tree));
}

std::optional<Segment> shrink_front(const Segment &seg) {
    if (seg.length() == 1)
        return std::nullopt;
    Segment s = seg;
    s.from += seg.to >= seg.from ? Rat(1) : Rat(-1);
    return s;
}

std::optional<Segment> shrink_back(const Segment &seg) {
    if (seg.length() == 1)
        return std::nullopt;
    Segment s = seg;
    s.to += seg.to >= seg.from ? Rat(-1) : Rat(1);
    return s;
}

bool jac_commutes(const SupercuspidalLabel &r1, const Rat &x1,
                  const SupercuspidalLabel &r2, const Rat &x2) {
    if (r1.name != r2.name)
        return true;
    const Rat d = x1 >= x2 ? x1 - x2 : x2 - x1;
    return d >= Rat(2);
}

FormalSum jac_push(const SupercuspidalLabel &rho, const Rat &x, const TermPtr &tree);

// Find the leaf atom of a chain.
const Atom &leaf_atom(const TermPtr &tree) {
    const Term *t = tree.get();
    while (t->kind != Term::Kind::atom)
        t = t->child.get();
    return t->atom;
}

FormalSum wrap_ind(const Segment &seg, const FormalSum &inner) {
    FormalSum out;
    for (const auto &[k, e] : inner.entries)
        out.add(insert_segment(seg, e.term), e.twist, e.coeff);
    return out;
}

FormalSum wrap_jac(const SupercuspidalLabel &rho, const Rat &x, const FormalSum &inner) {
    FormalSum out;
    for (const auto &[k, e] : inner.entries)
        out.add_sum(jac_push(rho, x, e.term), e.twist, e.coeff);
    return out;
}

// Apply Jac^rho_x to a canonical tree, producing canonical terms.
FormalSum jac_push(const SupercuspidalLabel &rho, const Rat &x, const TermPtr &tree) {
    consume_budget();
    FormalSum out;

    if (tree->kind == Term::Kind::ind) {
        const Segment &seg = tree->seg;
        // Front extraction: x at the head of the segment.
        if (seg.rho == rho && seg.from == x) {
            if (auto s = shrink_front(seg))
                out.add(insert_segment(*s, tree->child), TwistChar{}, 1);
            else
                out.add(tree->child, TwistChar{}, 1);
        }
        // Back extraction on the contragredient side: x = -to for rho^vee.
        if (seg.rho.dual() == rho && seg.to == -x) {
            const TwistChar tw = leaf_atom(tree).classical
                                     ? TwistChar{}
                                     : eta_twist(seg.rho.eta, Rat(1)) *
                                           omega_twist(seg.rho.name, -x);
            TermPtr rest;
            if (auto s = shrink_back(seg))
                rest = insert_segment(*s, tree->child);
            else
                rest = tree->child;
            out.add(rest, tw, 1);
        }
        // Pass-through.
        out.add_sum(wrap_ind(seg, jac_push(rho, x, tree->child)), TwistChar{}, 1);
        return out;
    }

    if (tree->kind == Term::Kind::jac) {
        if (tree->jrho.name == rho.name && tree->jx == x)
            return out; // Jac^rho_{x,x} annihilates packet atoms: zero
        const auto key_outer = std::make_pair(rho.name, x);
        const auto key_inner = std::make_pair(tree->jrho.name, tree->jx);
        if (jac_commutes(rho, x, tree->jrho, tree->jx) && key_outer < key_inner)
            return wrap_jac(tree->jrho, tree->jx, jac_push(rho, x, tree->child));
        out.add(make_jac(rho, x, tree), TwistChar{}, 1);
        return out;
    }

    // Atom leaf: keep the residual Jacquet node opaque.
    out.add(make_jac(rho, x, tree), TwistChar{}, 1);
    return out;
}

FormalSum normalize_term(const TermPtr &tree) {
    FormalSum out;
    switch (tree->kind) {
    case Term::Kind::atom: {
        Atom a = make_atom(tree->atom.family, tree->atom.classical, tree->atom.blocks,
                           tree->atom.notes);
        out.add(make_atom_term(std::move(a)), TwistChar{}, 1);
        return out;
    }
    case Term::Kind::ind: {
        const FormalSum inner = normalize_term(tree->child);
        return wrap_ind(tree->seg, inner);
    }
    case Term::Kind::jac: {
        const FormalSum inner = normalize_term(tree->child);
        FormalSum res;
        for (const auto &[k, e] : inner.entries)
            res.add_sum(jac_push(tree->jrho, tree->jx, e.term), e.twist, e.coeff);
        return res;
    }
    }
    return out;
}

// -------------------------------------------------------------------------
// Expansion
// -------------------------------------------------------------------------

// Attach (rho, A, B, zeta; eta) to the block/note lists; returns false when
// the convention makes the term vanish (empty block with a minus sign).
bool attach_block(std::vector<AnnotatedBlock> &blocks, std::vector<EmptyNote> &notes,
                  const SupercuspidalLabel &rho, const Rat &A, const Rat &B, int zeta,
                  int eta, EmptyBlockConvention conv) {
    if (A >= B) {
        blocks.push_back({block_from_ABz(rho, A, B, zeta), eta});
        return true;
    }
    require(A == B - 1, "InternalError", "unexpected block shape A < B - 1");
    if (conv == EmptyBlockConvention::zero_unless_plus && eta == -1)
        return false;
    notes.push_back({rho.name, B, zeta, eta});
    return true;
}

// eta-companion atoms pi(psi' , (rho,A,B+1,zeta;eta), (rho,B,B,zeta;eta*eta0)).
Atom companion_atom(const Atom &rest, const JordanBlock &blk, int eta, int eta0) {
    std::vector<AnnotatedBlock> blocks = rest.blocks;
    std::vector<EmptyNote> notes = rest.notes;
    blocks.push_back({block_from_ABz(blk.rho, blk.A(), blk.B() + 1, blk.zeta), eta});
    blocks.push_back({block_from_ABz(blk.rho, blk.B(), blk.B(), blk.zeta), eta * eta0});
    return make_atom(rest.family, rest.classical, std::move(blocks), std::move(notes));
}

// Degenerate-case test: the two companions are the same representation of
// the similitude group, i.e. their sign ratio is trivial on the kernel of
// alpha (together with s_0) in the companions' centralizer.
bool companions_equal(const Atom &plus_atom, const JordanBlock &blk) {
    // The identification happens at the similitude level only; on the
    // classical group the two companions stay distinct.
    if (plus_atom.classical)
        return false;
    if (blk.rho.parity != Parity::orthogonal || blk.rho.eta == kTrivialTag ||
        blk.a % 2 != 0 || blk.b % 2 != 0)
        return false;
    const ArthurParameter psi2 = atom_parameter(plus_atom);
    const JordanBlock upper = block_from_ABz(blk.rho, blk.A(), blk.B() + 1, blk.zeta);
    const JordanBlock lower = block_from_ABz(blk.rho, blk.B(), blk.B(), blk.zeta);

    const CentralizerDescriptor desc = build_centralizer(psi2);
    SignVector delta_exp;
    int seen_upper = 0, seen_lower = 0;
    for (const auto &b : psi2.expanded()) {
        if (b == upper && !seen_upper) {
            delta_exp.push_back(-1);
            seen_upper = 1;
        } else if (b == lower && !seen_lower) {
            delta_exp.push_back(-1);
            seen_lower = 1;
        } else {
            delta_exp.push_back(+1);
        }
    }
    require(seen_upper && seen_lower, "InternalError", "companion blocks not found");
    const SignVector delta = cont(desc, delta_exp);

    for (const auto &v : ker_alpha_lift(desc, /*intersect_S=*/false))
        if (pairing(delta, v) != +1)
            return false;
    if (!desc.s0_trivial() && pairing(delta, desc.s0) != +1)
        return false;
    return true;
}

FormalSum expand_atom(const Atom &atom, std::size_t pos, EmptyBlockConvention conv) {
    const JordanBlock blk = atom.blocks[pos].block;
    const int eta0 = atom.blocks[pos].eta;
    const Rat A = blk.A(), B = blk.B();
    const int zeta = blk.zeta;
    require(A > B, "ElementaryBlock", "selected block has A = B");

    Atom rest = atom;
    rest.blocks.erase(rest.blocks.begin() + (long)pos);

    FormalSum out;
    const long long half = rat_floor((A - B + 1) / 2);
    const long long span = rat_floor(A - B); // A - B as an integer

    // Companion terms X_eta.
    const Atom plus_atom = companion_atom(rest, blk, +1, eta0);
    if (companions_equal(plus_atom, blk)) {
        // Degenerate case: the two companions coincide; a single term.
        out.add(make_atom_term(plus_atom), TwistChar{}, pow_sign(-1, half) * eta0);
    } else {
        for (int eta : {+1, -1}) {
            const Atom a = eta == +1 ? plus_atom : companion_atom(rest, blk, -1, eta0);
            const long long coeff = pow_sign(-1, half) * pow_sign(eta, span + 1) *
                                    pow_sign(eta0, span);
            out.add(make_atom_term(a), TwistChar{}, coeff);
        }
    }

    // Segment terms X_C, C in ]B, A].
    std::vector<AnnotatedBlock> cblocks = rest.blocks;
    std::vector<EmptyNote> cnotes = rest.notes;
    if (!attach_block(cblocks, cnotes, blk.rho, A, B + 2, zeta, eta0, conv))
        return out; // the shared child atom vanishes
    const Atom child =
        make_atom(rest.family, rest.classical, std::move(cblocks), std::move(cnotes));

    for (Rat C = B + 1; C <= A; C += 1) {
        TermPtr t = make_atom_term(child);
        for (Rat y = B + 2; y <= C; y += 1)
            t = make_jac(blk.rho, Rat(zeta) * y, t);
        Segment seg{blk.rho, Rat(zeta) * B, Rat(-zeta) * C};
        t = make_ind(seg, t);

        TwistChar tw;
        if (!atom.classical) {
            Rat gamma = (B + 1) / 2;
            for (Rat D = B + 2; D <= C; D += 1)
                gamma += D;
            tw = eta_twist(blk.rho.eta, C) * omega_twist(blk.rho.name, Rat(zeta) * gamma) *
                 chi_twist(blk.rho.name, 1);
        }
        out.add(t, tw, pow_sign(-1, rat_floor(A - C)));
    }
    return out;
}

// Rebuild the Ind/Jac context above a replaced leaf.
TermPtr rebuild_context(const std::vector<const Term *> &context, TermPtr leaf) {
    for (auto it = context.rbegin(); it != context.rend(); ++it) {
        if ((*it)->kind == Term::Kind::ind)
            leaf = make_ind((*it)->seg, std::move(leaf));
        else
            leaf = make_jac((*it)->jrho, (*it)->jx, std::move(leaf));
    }
    return leaf;
}

// Index of the reducible block to expand next: largest A - B, then smallest
// key; nullopt if the atom is elementary.
std::optional<std::size_t> pick_block(const Atom &atom) {
    std::optional<std::size_t> best;
    Rat best_span(0);
    for (std::size_t i = 0; i < atom.blocks.size(); ++i) {
        const Rat span = atom.blocks[i].block.A() - atom.blocks[i].block.B();
        if (span > Rat(0) && (!best || span > best_span)) {
            best = i;
            best_span = span;
        }
    }
    return best;
}

Atom initial_atom(const ArthurParameter &psi, const Character &eps, bool classical) {
    require(classify(psi).ddr, "NotDDR",
            "expansion requires a discrete-diagonal-restriction parameter");
    require(!eps.mod_eps0, "CharacterNotInDual", "expected a character of S^{Sigma0}");
    require(eps.values.size() == psi.blocks.size(), "IndexMismatch",
            "character length != number of blocks");
    std::vector<AnnotatedBlock> blocks;
    for (std::size_t i = 0; i < psi.blocks.size(); ++i) {
        require(psi.blocks[i].mult == 1, "NotDDR", "parameter is not multiplicity-free");
        blocks.push_back({psi.blocks[i].block, eps.values[i]});
    }
    return make_atom(psi.group.family, classical, std::move(blocks), {});
}

} // namespace

FormalSum expand_step(const ArthurParameter &psi, const Character &eps,
                      std::size_t block_index, EmptyBlockConvention conv,
                      bool classical) {
    const Atom atom = initial_atom(psi, eps, classical);
    require(block_index < atom.blocks.size(), "IndexMismatch", "block index out of range");
    // initial_atom sorts like psi.blocks (both normalized orders coincide).
    std::size_t pos = 0;
    bool found = false;
    for (std::size_t i = 0; i < atom.blocks.size(); ++i)
        if (atom.blocks[i].block == psi.blocks[block_index].block) {
            pos = i;
            found = true;
            break;
        }
    require(found, "InternalError", "block lookup failed");
    return expand_atom(atom, pos, conv);
}

FormalSum expand_full(const ArthurParameter &psi, const Character &eps,
                      EmptyBlockConvention conv, bool classical,
                      std::optional<std::size_t> first_block) {
    FormalSum sum;
    {
        const Atom atom = initial_atom(psi, eps, classical);
        sum.add(make_atom_term(atom), TwistChar{}, 1);
    }
    bool first = true;
    for (;;) {
        FormalSum next;
        bool changed = false;
        for (const auto &[k, e] : sum.entries) {
            // Walk to the leaf atom, keeping the context chain.
            std::vector<const Term *> context;
            const Term *t = e.term.get();
            while (t->kind != Term::Kind::atom) {
                context.push_back(t);
                t = t->child.get();
            }
            std::optional<std::size_t> pos = pick_block(t->atom);
            if (first && first_block) {
                // Override only for the initial single-atom sum.
                const JordanBlock &want = psi.blocks[*first_block].block;
                bool found = false;
                for (std::size_t i = 0; i < t->atom.blocks.size(); ++i)
                    if (t->atom.blocks[i].block == want) {
                        pos = i;
                        found = true;
                    }
                require(found && want.A() > want.B(), "ElementaryBlock",
                        "first_block must select a reducible block");
            }
            if (!pos) {
                next.add(e.term, e.twist, e.coeff);
                continue;
            }
            changed = true;
            const FormalSum pieces = expand_atom(t->atom, *pos, conv);
            for (const auto &[pk, pe] : pieces.entries)
                next.add(rebuild_context(context, pe.term), e.twist * pe.twist,
                         e.coeff * pe.coeff);
        }
        sum = std::move(next);
        first = false;
        if (!changed)
            break;
    }
    return normal_form(sum);
}

FormalSum normal_form(const FormalSum &sum) {
    jac_budget = 1000000;
    FormalSum out;
    for (const auto &[k, e] : sum.entries)
        out.add_sum(normalize_term(e.term), e.twist, e.coeff);
    return out;
}

FormalSum jac_apply(const FormalSum &sum, const SupercuspidalLabel &rho, const Rat &x) {
    FormalSum wrapped;
    for (const auto &[k, e] : sum.entries)
        wrapped.add(make_jac(rho, x, e.term), e.twist, e.coeff);
    return normal_form(wrapped);
}

FormalSum jac_contract(const FormalSum &sum, const SupercuspidalLabel &rho,
                       const Rat &A, const Rat &B, int zeta, long long T) {
    require(A >= B, "InvalidInput", "contraction target must be a genuine block");
    const JordanBlock source = block_from_ABz(rho, A + Rat(T), B + Rat(T), zeta);
    const JordanBlock target = block_from_ABz(rho, A, B, zeta);
    const Rat xsum = jac_shift_matrix(target, T).second;

    FormalSum out;
    for (const auto &[k, e] : sum.entries) {
        std::vector<const Term *> context;
        const Term *t = e.term.get();
        while (t->kind != Term::Kind::atom) {
            context.push_back(t);
            t = t->child.get();
        }
        Atom atom = t->atom;
        bool found = false;
        for (auto &ab : atom.blocks)
            if (!found && ab.block == source) {
                ab.block = target;
                found = true;
            }
        require(found, "BlockNotFound",
                "no block (" + rho.name + "," + rat_str(A + Rat(T)) + "," +
                    rat_str(B + Rat(T)) + ") to contract");
        Atom canon = make_atom(atom.family, atom.classical, atom.blocks, atom.notes);
        const TwistChar tw =
            canon.classical ? TwistChar{} : omega_twist(rho.name, -xsum / 2);
        out.add(rebuild_context(context, make_atom_term(std::move(canon))),
                e.twist * tw, e.coeff);
    }
    return out;
}

InfChar infchar_of_term(const TermPtr &term) {
    if (term->kind == Term::Kind::atom) {
        ArthurParameter psi;
        for (const auto &ab : term->atom.blocks)
            psi.blocks.push_back({ab.block, 1});
        psi.normalize();
        return inf_char(psi);
    }
    InfChar ic = infchar_of_term(term->child);
    if (term->kind == Term::Kind::ind) {
        const Segment &seg = term->seg;
        for (const Rat &y : seg.exponents()) {
            ic.add(seg.rho.name, y);
            ic.add(seg.rho.dual().name, -y);
        }
        return ic;
    }
    // Jacquet node: remove one (rho, x) and one (rho^vee, -x) entry.
    auto remove = [&](const std::string &name, const Rat &y) {
        auto it = ic.entries.find({name, y});
        require(it != ic.entries.end() && it->second > 0, "InfCharMismatch",
                "Jacquet node removes an absent infinitesimal-character entry");
        if (--it->second == 0)
            ic.entries.erase(it);
    };
    remove(term->jrho.name, term->jx);
    remove(term->jrho.dual().name, -term->jx);
    return ic;
}

bool constant_infchar(const FormalSum &sum, InfChar *out) {
    bool have = false;
    InfChar first;
    for (const auto &[k, e] : sum.entries) {
        const InfChar ic = infchar_of_term(e.term);
        if (!have) {
            first = ic;
            have = true;
        } else if (!(ic == first)) {
            return false;
        }
    }
    if (out)
        *out = first;
    return true;
}

bool verify_block_independence(const ArthurParameter &psi, const Character &eps,
                               EmptyBlockConvention conv) {
    std::vector<std::size_t> reducible;
    for (std::size_t i = 0; i < psi.blocks.size(); ++i)
        if (psi.blocks[i].block.A() > psi.blocks[i].block.B())
            reducible.push_back(i);
    if (reducible.size() < 2)
        return true;
    std::optional<FormalSum> ref;
    for (std::size_t i : reducible) {
        FormalSum s = expand_full(psi, eps, conv, /*classical=*/false, i);
        if (!ref)
            ref = std::move(s);
        else if (!(s == *ref))
            return false;
    }
    return true;
}

namespace {

long long count_atoms(const Atom &atom, EmptyBlockConvention conv) {
    if (conv == EmptyBlockConvention::zero_unless_plus)
        for (const auto &n : atom.notes)
            if (n.eta == -1)
                return 0;
    const std::optional<std::size_t> pos = pick_block(atom);
    if (!pos)
        return 1;

    const JordanBlock blk = atom.blocks[*pos].block;
    const int eta0 = atom.blocks[*pos].eta;
    const Rat A = blk.A(), B = blk.B();
    const long long span = rat_floor(A - B);

    Atom rest = atom;
    rest.blocks.erase(rest.blocks.begin() + (long)*pos);

    long long total = 0;

    // Highest constituent: the block descends to (rho, A-1, B+1, zeta; eta0).
    {
        std::vector<AnnotatedBlock> blocks = rest.blocks;
        std::vector<EmptyNote> notes = rest.notes;
        if (attach_block(blocks, notes, blk.rho, A - 1, B + 1, blk.zeta, eta0, conv))
            total += count_atoms(
                make_atom(rest.family, rest.classical, std::move(blocks), std::move(notes)),
                conv);
    }

    // Elementary constituents: eta with eta0 = prod_{C in [B,A]} (-1)^{C-B} eta.
    for (int eta : {+1, -1}) {
        const int prod =
            pow_sign(eta, span + 1) * pow_sign(-1, span * (span + 1) / 2);
        if (prod != eta0)
            continue;
        std::vector<AnnotatedBlock> blocks = rest.blocks;
        long long j = 0;
        for (Rat C = B; C <= A; C += 1, ++j)
            blocks.push_back({block_from_ABz(blk.rho, C, C, blk.zeta),
                              eta * pow_sign(-1, j)});
        total += count_atoms(
            make_atom(rest.family, rest.classical, std::move(blocks), rest.notes), conv);
    }
    return total;
}

} // namespace

long long resolved_count(const ArthurParameter &psi, const Character &eps,
                         EmptyBlockConvention conv) {
    return count_atoms(initial_atom(psi, eps, /*classical=*/false), conv);
}

namespace {

// Characters of the atom's centralizer trivial on ker(alpha): the
// restriction fiber of the similitude atom.
std::vector<SignVector> restriction_fiber(const ArthurParameter &psi2) {
    const CentralizerDescriptor desc = build_centralizer(psi2);
    const auto kernel = ker_alpha_lift(desc, /*intersect_S=*/false);
    std::vector<SignVector> out;
    for (const auto &ch : characters(desc, WhichGroup::S_Sigma0)) {
        bool ok = true;
        for (const auto &v : kernel)
            if (pairing(ch, v) != +1)
                ok = false;
        if (ok)
            out.push_back(ch.values);
    }
    return out;
}

} // namespace

FormalSum restrict_sum(const FormalSum &sum) {
    FormalSum out;
    for (const auto &[k, e] : sum.entries) {
        std::vector<const Term *> context;
        const Term *t = e.term.get();
        while (t->kind != Term::Kind::atom) {
            context.push_back(t);
            t = t->child.get();
        }
        const Atom &atom = t->atom;
        const ArthurParameter psi2 = atom_parameter(atom);
        const CentralizerDescriptor desc = build_centralizer(psi2);
        for (const auto &fiber_char : restriction_fiber(psi2)) {
            Atom a = atom;
            a.classical = true;
            for (auto &ab : a.blocks) {
                // Locate the dedup index of this block.
                for (std::size_t i = 0; i < desc.k(); ++i)
                    if (desc.jordan[i].rho.name == ab.block.rho.name &&
                        desc.jordan[i].a == ab.block.a && desc.jordan[i].b == ab.block.b)
                        ab.eta *= fiber_char[i];
            }
            Atom canon = make_atom(a.family, true, a.blocks, a.notes);
            out.add(rebuild_context(context, make_atom_term(std::move(canon))),
                    TwistChar{}, e.coeff);
        }
    }
    return out;
}

bool verify_restriction(const ArthurParameter &psi, const Character &eps,
                        EmptyBlockConvention conv) {
    const FormalSum lhs = restrict_sum(expand_full(psi, eps, conv, /*classical=*/false));

    FormalSum rhs;
    for (const auto &fiber_char : restriction_fiber(psi)) {
        Character e2 = eps;
        for (std::size_t i = 0; i < e2.values.size(); ++i)
            e2.values[i] *= fiber_char[i];
        rhs.add_sum(expand_full(psi, e2, conv, /*classical=*/true), TwistChar{}, 1);
    }
    return lhs == rhs;
}

FormalSum expand_general(const ArthurParameter &psi, const Character &eps,
                         const AdmissibleOrder &order, EmptyBlockConvention conv) {
    (void)conv;
    const CentralizerDescriptor desc = build_centralizer(psi);
    require(eps.values.size() == desc.k() && !eps.mod_eps0, "CharacterNotInDual",
            "character index set does not match Jord(psi)_p");
    const DominatingResult dom = dominating(psi, order);

    const auto ex = psi.expanded();
    const SignVector eta = ext(desc, eps.values);

    struct Shifted {
        JordanBlock target;
        long long T;
    };
    std::vector<Shifted> shifted;
    std::vector<AnnotatedBlock> blocks;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        const long long T = dom.shifts[i];
        blocks.push_back({block_from_ABz(ex[i].rho, ex[i].A() + Rat(T),
                                         ex[i].B() + Rat(T), ex[i].zeta),
                          eta[i]});
        if (T > 0)
            shifted.push_back({ex[i], T});
    }
    FormalSum sum;
    sum.add(make_atom_term(make_atom(psi.group.family, false, std::move(blocks), {})),
            TwistChar{}, 1);

    // Contract the shifted blocks back, largest shifted block first; the
    // compensating omega twist cancels the contraction twist.
    std::sort(shifted.begin(), shifted.end(), [](const Shifted &x, const Shifted &y) {
        return x.target.A() + Rat(x.T) > y.target.A() + Rat(y.T);
    });
    for (const auto &s : shifted) {
        sum = jac_contract(sum, s.target.rho, s.target.A(), s.target.B(),
                           s.target.zeta, s.T);
        const Rat xsum = jac_shift_matrix(s.target, s.T).second;
        FormalSum twisted;
        twisted.add_sum(sum, omega_twist(s.target.rho.name, xsum / 2), 1);
        sum = std::move(twisted);
    }
    return sum;
}

} // namespace arthur
