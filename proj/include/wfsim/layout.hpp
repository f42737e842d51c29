#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wfsim {

/// One named subsystem of the composite space.
struct Register {
    std::string name;
    std::size_t dim = 2;

    bool operator==(const Register&) const = default;
};

/// Ordered list of named subsystems with a fixed tensor convention:
/// flat indices are row-major over the declared order, so the first
/// register varies slowest.
class RegisterLayout {
  public:
    explicit RegisterLayout(std::vector<Register> subsystems);

    static RegisterLayout qubits(const std::vector<std::string>& names);

    std::size_t num_registers() const { return regs_.size(); }
    std::size_t total_dim() const { return total_dim_; }
    const std::vector<Register>& subsystems() const { return regs_; }

    bool has(std::string_view name) const;
    /// Position of a register in the declared order. Throws on unknown name.
    std::size_t position(std::string_view name) const;
    std::size_t dim(std::string_view name) const;
    std::size_t dim_at(std::size_t position) const { return regs_[position].dim; }
    const std::string& name_at(std::size_t position) const { return regs_[position].name; }
    std::size_t stride_at(std::size_t position) const { return strides_[position]; }

    /// Row-major flat index of a full multi-index (one digit per register).
    std::size_t flat_index(std::span<const std::size_t> digits) const;
    /// Inverse of flat_index.
    std::vector<std::size_t> digits(std::size_t flat) const;
    /// Digit of a single register within a flat index.
    std::size_t digit_at(std::size_t flat, std::size_t position) const;

    bool operator==(const RegisterLayout&) const = default;

  private:
    std::vector<Register> regs_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 1;
};

}  // namespace wfsim
