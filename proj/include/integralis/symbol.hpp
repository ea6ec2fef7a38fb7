#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace integralis {

// Interned symbols. Ids are assigned in order of first appearance, which is
// deterministic for a given input, so canonical term orders are reproducible.
class SymbolTable {
public:
    static SymbolTable& instance() {
        static SymbolTable t;
        return t;
    }

    int intern(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }

    // Lookup without creating; -1 if unknown.
    int find(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(name);
        return it == ids_.end() ? -1 : it->second;
    }

    const std::string& name(int id) const {
        if (id < 0) throw std::out_of_range("bad symbol id");
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(static_cast<std::size_t>(id));
    }

private:
    mutable std::mutex mu_;
    std::deque<std::string> names_;
    std::map<std::string, int> ids_;
};

inline int sym(const std::string& name) { return SymbolTable::instance().intern(name); }
inline const std::string& symName(int id) { return SymbolTable::instance().name(id); }

} // namespace integralis
