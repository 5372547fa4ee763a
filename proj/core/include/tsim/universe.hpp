// ============================================================================
// tsim/universe.hpp — Variable universe shared by all sets of one check
// ============================================================================
//
// Every zone and symbolic set of a simulation check lives over one fixed,
// shared variable universe. The layout is:
//
//   index 0                      the constant-zero reference
//   1 .. clock_count             the model clocks of both automata
//   clock_count+1 .. +3          displacement variables ("@delta", "@t",
//                                "@t2"): auxiliary quantities that do not
//                                advance with time and may be negative.
//                                By convention they carry negated durations,
//                                so "@delta" holds -delta.
//   clock_count+4                the auxiliary clock "@z": advances with
//                                time like a clock but may be negative.
//                                It carries z - delta during backward
//                                reachability.
//
// Model clocks range over [0, inf); the auxiliary variables over all reals.
// Propositions live alongside as a separate name list; their valuations are
// handled by cubes, not by the zone part.
//
// ============================================================================

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsim {

enum class VarKind : std::uint8_t {
    Zero,          // the reference variable, index 0
    Clock,         // model clock: >= 0, advances with time
    AuxClock,      // advances with time, unrestricted sign
    Displacement,  // fixed under time shift, unrestricted sign
};

class VarUniverse {
public:
    static std::shared_ptr<const VarUniverse> make(
        std::vector<std::string> clocks, std::vector<std::string> props) {
        return std::shared_ptr<const VarUniverse>(
            new VarUniverse(std::move(clocks), std::move(props)));
    }

    std::size_t var_count() const { return names_.size(); }
    std::size_t clock_count() const { return clock_count_; }

    const std::string& var_name(std::size_t i) const { return names_[i]; }
    VarKind var_kind(std::size_t i) const { return kinds_[i]; }
    bool shifts_with_time(std::size_t i) const {
        return kinds_[i] == VarKind::Clock || kinds_[i] == VarKind::AuxClock;
    }

    std::size_t neg_delta() const { return clock_count_ + 1; }
    std::size_t neg_t() const { return clock_count_ + 2; }
    std::size_t neg_t2() const { return clock_count_ + 3; }
    std::size_t aux_z() const { return clock_count_ + 4; }

    std::optional<std::size_t> var_index(const std::string& name) const {
        for (std::size_t i = 1; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    std::size_t require_var(const std::string& name) const {
        auto i = var_index(name);
        if (!i) throw std::invalid_argument("unknown clock: " + name);
        return *i;
    }

    std::size_t prop_count() const { return props_.size(); }
    const std::string& prop_name(std::size_t k) const { return props_[k]; }

    std::optional<std::size_t> prop_index(const std::string& name) const {
        for (std::size_t k = 0; k < props_.size(); ++k)
            if (props_[k] == name) return k;
        return std::nullopt;
    }

    std::size_t require_prop(const std::string& name) const {
        auto k = prop_index(name);
        if (!k) throw std::invalid_argument("unknown proposition: " + name);
        return *k;
    }

private:
    VarUniverse(std::vector<std::string> clocks, std::vector<std::string> props)
        : clock_count_(clocks.size()), props_(std::move(props)) {
        names_.reserve(clocks.size() + 5);
        kinds_.reserve(clocks.size() + 5);
        names_.push_back("0");
        kinds_.push_back(VarKind::Zero);
        for (auto& c : clocks) {
            names_.push_back(std::move(c));
            kinds_.push_back(VarKind::Clock);
        }
        for (const char* aux : {"@delta", "@t", "@t2"}) {
            names_.push_back(aux);
            kinds_.push_back(VarKind::Displacement);
        }
        names_.push_back("@z");
        kinds_.push_back(VarKind::AuxClock);
    }

    std::size_t clock_count_;
    std::vector<std::string> names_;
    std::vector<VarKind> kinds_;
    std::vector<std::string> props_;
};

using UniversePtr = std::shared_ptr<const VarUniverse>;

}  // namespace tsim
