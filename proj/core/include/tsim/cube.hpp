// ============================================================================
// tsim/cube.hpp — Conjunctions of proposition literals
// ============================================================================
//
// A Cube fixes some propositions of the universe to true or false and leaves
// the rest free. It is the boolean half of a symbolic set cell; the clock
// half is a Zone.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsim/universe.hpp"

namespace tsim {

class Cube {
public:
    enum class Lit : std::uint8_t { Free = 0, True = 1, False = 2 };

    explicit Cube(const UniversePtr& u) : lits_(u->prop_count(), Lit::Free) {}

    std::size_t size() const { return lits_.size(); }

    Lit get(std::size_t k) const { return lits_[k]; }

    void set(std::size_t k, bool v) { lits_[k] = v ? Lit::True : Lit::False; }
    void clear(std::size_t k) { lits_[k] = Lit::Free; }

    bool fixes(std::size_t k) const { return lits_[k] != Lit::Free; }
    bool fixed_value(std::size_t k) const { return lits_[k] == Lit::True; }

    /// Conjoin with other. Returns false when the literals conflict
    /// (the conjunction is empty).
    bool intersect_with(const Cube& other) {
        for (std::size_t k = 0; k < lits_.size(); ++k) {
            if (other.lits_[k] == Lit::Free) continue;
            if (lits_[k] == Lit::Free)
                lits_[k] = other.lits_[k];
            else if (lits_[k] != other.lits_[k])
                return false;
        }
        return true;
    }

    /// Is the conjunction with other nonempty? Same test as intersect_with
    /// without building the result.
    bool intersects(const Cube& other) const {
        for (std::size_t k = 0; k < lits_.size(); ++k) {
            if (lits_[k] != Lit::Free && other.lits_[k] != Lit::Free &&
                lits_[k] != other.lits_[k])
                return false;
        }
        return true;
    }

    /// Does this cube contain every assignment of other?
    bool subsumes(const Cube& other) const {
        for (std::size_t k = 0; k < lits_.size(); ++k) {
            if (lits_[k] == Lit::Free) continue;
            if (other.lits_[k] != lits_[k]) return false;
        }
        return true;
    }

    bool eval(const std::vector<bool>& assignment) const {
        for (std::size_t k = 0; k < lits_.size(); ++k) {
            if (lits_[k] == Lit::Free) continue;
            if ((lits_[k] == Lit::True) != assignment[k]) return false;
        }
        return true;
    }

    bool is_free() const {
        for (auto l : lits_)
            if (l != Lit::Free) return false;
        return true;
    }

    friend bool operator==(const Cube& a, const Cube& b) {
        return a.lits_ == b.lits_;
    }
    friend bool operator<(const Cube& a, const Cube& b) {
        return a.lits_ < b.lits_;
    }

    std::string to_string(const VarUniverse& u) const {
        std::string s;
        for (std::size_t k = 0; k < lits_.size(); ++k) {
            if (lits_[k] == Lit::Free) continue;
            if (!s.empty()) s += " && ";
            if (lits_[k] == Lit::False) s += "!";
            s += u.prop_name(k);
        }
        return s;
    }

private:
    std::vector<Lit> lits_;
};

}  // namespace tsim
