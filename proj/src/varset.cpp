#include "rforge/varset.hpp"

#include "rforge/errors.hpp"

#include <set>

namespace rforge {

std::shared_ptr<const VarSet> VarSet::make(std::vector<std::string> active,
                                           std::vector<std::string> parameters) {
    if (active.empty()) throw UsageError("at least one active variable is required");
    std::set<std::string> seen;
    const std::size_t n = active.size();
    std::vector<std::string> names = std::move(active);
    names.insert(names.end(), parameters.begin(), parameters.end());
    for (const auto& name : names) {
        if (name.empty()) throw UsageError("empty variable name");
        if (!seen.insert(name).second) throw UsageError("duplicate variable name '" + name + "'");
    }
    return std::shared_ptr<const VarSet>(new VarSet(std::move(names), n));
}

std::vector<std::string> VarSet::active_names() const {
    return {names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(num_active_)};
}

std::optional<std::size_t> VarSet::find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::size_t VarSet::index_of(const std::string& name) const {
    if (auto idx = find(name)) return *idx;
    throw UsageError("unknown variable '" + name + "'");
}

} // namespace rforge
