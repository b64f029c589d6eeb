#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rforge {

/// Ordered variable declaration: active x-variables followed by parameters
/// (y-copies, deformation variables z_i). The order fixes the monomial order
/// and the orientation dx_1 ... dx_n.
class VarSet {
public:
    static std::shared_ptr<const VarSet> make(std::vector<std::string> active,
                                              std::vector<std::string> parameters = {});

    std::size_t size() const noexcept { return names_.size(); }
    std::size_t num_active() const noexcept { return num_active_; }
    bool is_active(std::size_t index) const noexcept { return index < num_active_; }

    const std::string& name(std::size_t index) const { return names_.at(index); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::vector<std::string> active_names() const;

    std::optional<std::size_t> find(const std::string& name) const;
    /// Throws UsageError for an undeclared name.
    std::size_t index_of(const std::string& name) const;

    bool operator==(const VarSet& other) const {
        return num_active_ == other.num_active_ && names_ == other.names_;
    }

private:
    VarSet(std::vector<std::string> names, std::size_t num_active)
        : names_(std::move(names)), num_active_(num_active) {}

    std::vector<std::string> names_;
    std::size_t num_active_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

/// Same object or structurally equal declarations.
inline bool same_vars(const VarSetPtr& a, const VarSetPtr& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace rforge
