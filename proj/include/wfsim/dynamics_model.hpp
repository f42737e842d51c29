#pragma once

#include <string>

namespace wfsim {

/// The two competing dynamics: purely unitary evolution, or a projective
/// collapse that physically occurs at a named collapse point of the script.
struct DynamicsModel {
    enum class Kind { unitary_only, collapse_at };

    Kind kind = Kind::unitary_only;
    std::string step_label;  // collapse_at: label of a collapse_point step
    std::string subsystem;   // collapse_at: register measured at that point

    static DynamicsModel unitary_only() { return {}; }
    static DynamicsModel collapse_at(std::string step_label, std::string subsystem) {
        return {Kind::collapse_at, std::move(step_label), std::move(subsystem)};
    }

    std::string describe() const {
        if (kind == Kind::unitary_only) return "unitary_only";
        return "collapse_at(" + step_label + ", " + subsystem + ")";
    }
};

}  // namespace wfsim
