#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lcacalc/errors.hpp"

namespace lca {

// Atomic building blocks for locally compact Polish abelian groups.
// The first nine tags are the core atoms; the last three are extended atoms
// with partial operation support.
enum class AtomTag : std::uint8_t {
    Real,       // R
    Circle,     // T
    OmegaTorus, // T^w (countably infinite torus)
    Solenoid,   // Sol = dual of Q
    Int,        // Z
    Rat,        // Q
    PadicInt,   // Zp(p)
    PadicRat,   // Qp(p)
    OmegaProd,  // PC(p) = (Z/p)^w, full product
    Cyclic,     // C(p^k)
    Prufer,     // Pr(p) = Z(p^inf)
    OmegaSum,   // SC(p) = (Z/p)^(w), finite-support sum
};

bool tag_has_prime(AtomTag t);
bool is_prime(long long n);

struct Atom {
    AtomTag tag;
    long long p = 0; // prime parameter; 0 when the tag carries none
    int k = 0;       // exponent, Cyclic only

    // Fixed total order: tag, then prime, then exponent.
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

Atom make_atom(AtomTag tag, long long p = 0, int k = 0); // validates, throws InvalidAtom

inline Atom atom_int() { return {AtomTag::Int}; }
inline Atom atom_rat() { return {AtomTag::Rat}; }
inline Atom atom_real() { return {AtomTag::Real}; }
inline Atom atom_circle() { return {AtomTag::Circle}; }
inline Atom atom_solenoid() { return {AtomTag::Solenoid}; }
inline Atom atom_omega_torus() { return {AtomTag::OmegaTorus}; }
inline Atom atom_cyclic(long long p, int k) { return make_atom(AtomTag::Cyclic, p, k); }
inline Atom atom_prufer(long long p) { return make_atom(AtomTag::Prufer, p); }
inline Atom atom_zp(long long p) { return make_atom(AtomTag::PadicInt, p); }
inline Atom atom_qp(long long p) { return make_atom(AtomTag::PadicRat, p); }
inline Atom atom_omega_prod(long long p) { return make_atom(AtomTag::OmegaProd, p); }
inline Atom atom_omega_sum(long long p) { return make_atom(AtomTag::OmegaSum, p); }

// Finite formal direct sum of atoms; the empty sum is the trivial group 0.
// Always kept in normal form (sorted multiset).
class GroupExpr {
public:
    GroupExpr() = default;
    explicit GroupExpr(std::vector<Atom> atoms); // sorts; atoms must be valid

    static GroupExpr zero() { return {}; }
    static GroupExpr single(Atom a) { return GroupExpr({a}); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool is_zero() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
    friend auto operator<=>(const GroupExpr&, const GroupExpr&) = default;

private:
    std::vector<Atom> atoms_;
};

// Raw atom descriptor as it arrives from the parser or bindings: like Atom
// but a Cyclic entry may carry a composite (or 1) order n instead of (p, k).
struct RawAtom {
    AtomTag tag;
    long long p = 0;
    int k = 0;
    long long cyclic_order = 0; // when > 0, overrides (p, k) for Cyclic
};

GroupExpr normalize(const std::vector<RawAtom>& raw);
GroupExpr direct_sum(const GroupExpr& a, const GroupExpr& b);
bool iso_equal(const GroupExpr& a, const GroupExpr& b);

std::string atom_to_string(const Atom& a);
std::string to_string(const GroupExpr& g);

} // namespace lca
