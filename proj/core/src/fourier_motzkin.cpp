#include "tsim/fourier_motzkin.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tsim {

bool LinearAtom::eval(const std::vector<Rational>& point) const {
    Rational sum(0);
    for (std::size_t i = 1; i < coef.size(); ++i)
        if (coef[i] != 0) sum = sum + Rational(coef[i]) * point[i];
    return strict ? sum < Rational(rhs) : sum <= Rational(rhs);
}

std::string LinearAtom::to_string(const VarUniverse& u) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 1; i < coef.size(); ++i) {
        if (coef[i] == 0) continue;
        if (first) {
            if (coef[i] == -1)
                os << "-";
            else if (coef[i] != 1)
                os << coef[i] << "*";
        } else {
            os << (coef[i] > 0 ? " + " : " - ");
            const auto a = coef[i] > 0 ? coef[i] : -coef[i];
            if (a != 1) os << a << "*";
        }
        os << u.var_name(i);
        first = false;
    }
    if (first) os << "0";
    os << (strict ? " < " : " <= ") << rhs;
    return os.str();
}

bool LinearSystem::eval(const std::vector<Rational>& point) const {
    for (const auto& a : atoms)
        if (!a.eval(point)) return false;
    return true;
}

std::string LinearSystem::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << " & ";
        os << atoms[i].to_string(*u);
    }
    if (atoms.empty()) os << "true";
    return os.str();
}

namespace {

// Divide out the gcd of all coefficients when it also divides the
// right-hand side; keeps numbers from growing across eliminations.
void normalize(LinearAtom& a) {
    std::int64_t g = 0;
    for (auto c : a.coef) g = std::gcd(g, c < 0 ? -c : c);
    if (g > 1 && a.rhs % g == 0) {
        for (auto& c : a.coef) c /= g;
        a.rhs /= g;
    }
}

}  // namespace

LinearSystem fm_eliminate_general(const LinearSystem& sys, std::size_t var) {
    LinearSystem in = sys;
    if (sys.u->var_kind(var) == VarKind::Clock) {
        LinearAtom dom;
        dom.coef.assign(sys.u->var_count(), 0);
        dom.coef[var] = -1;
        dom.rhs = 0;
        in.atoms.push_back(std::move(dom));
    }

    LinearSystem out{sys.u, {}};
    std::vector<const LinearAtom*> uppers, lowers;
    for (const auto& a : in.atoms) {
        const auto c = a.coef[var];
        if (c > 0)
            uppers.push_back(&a);
        else if (c < 0)
            lowers.push_back(&a);
        else
            out.atoms.push_back(a);
    }

    for (const auto* up : uppers)
        for (const auto* lo : lowers) {
            const std::int64_t a1 = up->coef[var];    // > 0
            const std::int64_t b1 = -lo->coef[var];   // > 0
            LinearAtom combo;
            combo.coef.assign(sys.u->var_count(), 0);
            for (std::size_t i = 1; i < combo.coef.size(); ++i)
                combo.coef[i] = b1 * up->coef[i] + a1 * lo->coef[i];
            combo.rhs = b1 * up->rhs + a1 * lo->rhs;
            combo.strict = up->strict || lo->strict;
            normalize(combo);
            // A trivially true combination (0 <= nonnegative) adds nothing.
            bool all_zero = true;
            for (std::size_t i = 1; i < combo.coef.size(); ++i)
                if (combo.coef[i] != 0) all_zero = false;
            if (all_zero && (combo.strict ? 0 < combo.rhs : 0 <= combo.rhs))
                continue;
            out.atoms.push_back(std::move(combo));
        }
    return out;
}

Zone to_zone(const LinearSystem& sys) {
    Zone z = Zone::universe(sys.u);
    for (const auto& a : sys.atoms) {
        std::size_t pos = 0, neg = 0;
        bool ok = true;
        for (std::size_t i = 1; i < a.coef.size(); ++i) {
            if (a.coef[i] == 1 && pos == 0)
                pos = i;
            else if (a.coef[i] == -1 && neg == 0)
                neg = i;
            else if (a.coef[i] != 0)
                ok = false;
        }
        if (!ok)
            throw std::invalid_argument(
                "atom is not difference-shaped: " + a.to_string(*sys.u));
        if (pos == 0 && neg == 0) {
            if (a.strict ? !(0 < a.rhs) : !(0 <= a.rhs))
                return Zone::empty(sys.u);
            continue;
        }
        const Bound b = a.strict ? Bound::strictly(a.rhs) : Bound::weak(a.rhs);
        z.constrain(pos, neg, b);  // pos==0 or neg==0 hit the reference row
    }
    return z;
}

LinearSystem from_zone(const Zone& z) {
    LinearSystem sys{z.universe_ptr(), {}};
    if (z.is_empty()) {
        LinearAtom contra;
        contra.coef.assign(sys.u->var_count(), 0);
        contra.rhs = -1;
        sys.atoms.push_back(std::move(contra));
        return sys;
    }
    for (const auto& dc : z.minimal_constraints()) {
        LinearAtom a;
        a.coef.assign(sys.u->var_count(), 0);
        if (dc.i != 0) a.coef[dc.i] += 1;
        if (dc.j != 0) a.coef[dc.j] -= 1;
        a.strict = dc.bound.strict;
        a.rhs = dc.bound.value;
        sys.atoms.push_back(std::move(a));
    }
    return sys;
}

}  // namespace tsim
