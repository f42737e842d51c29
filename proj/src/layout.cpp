#include "wfsim/layout.hpp"

#include <fmt/format.h>

#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace wfsim {

RegisterLayout::RegisterLayout(std::vector<Register> subsystems) : regs_(std::move(subsystems)) {
    if (regs_.empty()) {
        throw std::invalid_argument("layout: at least one register required");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& reg : regs_) {
        if (reg.name.empty()) {
            throw std::invalid_argument("layout: register names must be non-empty");
        }
        if (!seen.insert(reg.name).second) {
            throw std::invalid_argument(fmt::format("layout: duplicate register name '{}'", reg.name));
        }
        if (reg.dim < 2) {
            throw std::invalid_argument(
                fmt::format("layout: register '{}' has dim {}, need >= 2", reg.name, reg.dim));
        }
        if (total_dim_ > std::numeric_limits<std::size_t>::max() / reg.dim) {
            throw std::invalid_argument("layout: total dimension overflows");
        }
        total_dim_ *= reg.dim;
    }
    strides_.assign(regs_.size(), 1);
    for (std::size_t i = regs_.size(); i-- > 1;) {
        strides_[i - 1] = strides_[i] * regs_[i].dim;
    }
}

RegisterLayout RegisterLayout::qubits(const std::vector<std::string>& names) {
    std::vector<Register> regs;
    regs.reserve(names.size());
    for (const auto& name : names) regs.push_back({name, 2});
    return RegisterLayout(std::move(regs));
}

bool RegisterLayout::has(std::string_view name) const {
    for (const auto& reg : regs_) {
        if (reg.name == name) return true;
    }
    return false;
}

std::size_t RegisterLayout::position(std::string_view name) const {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].name == name) return i;
    }
    throw std::invalid_argument(fmt::format("layout: unknown register '{}'", name));
}

std::size_t RegisterLayout::dim(std::string_view name) const { return regs_[position(name)].dim; }

std::size_t RegisterLayout::flat_index(std::span<const std::size_t> digits) const {
    if (digits.size() != regs_.size()) {
        throw std::invalid_argument("layout: digit count does not match register count");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (digits[i] >= regs_[i].dim) {
            throw std::invalid_argument(fmt::format("layout: value {} out of range for register '{}' (dim {})",
                                                    digits[i], regs_[i].name, regs_[i].dim));
        }
        flat += digits[i] * strides_[i];
    }
    return flat;
}

std::vector<std::size_t> RegisterLayout::digits(std::size_t flat) const {
    std::vector<std::size_t> out(regs_.size());
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        out[i] = (flat / strides_[i]) % regs_[i].dim;
    }
    return out;
}

std::size_t RegisterLayout::digit_at(std::size_t flat, std::size_t position) const {
    return (flat / strides_[position]) % regs_[position].dim;
}

}  // namespace wfsim
