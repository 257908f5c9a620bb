#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polytask/core/errors.hpp"
#include "polytask/core/task.hpp"

namespace polytask {

inline bool is_snake_case(std::string_view id) {
  if (id.empty() || !(id.front() >= 'a' && id.front() <= 'z')) return false;
  for (char c : id) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

/// Tasks by id. Populate once, then share read-only.
class TaskRegistry {
 public:
  const Task& register_task(std::shared_ptr<const Task> task) {
    if (!task) throw RegistrationError("null task");
    const auto& id = task->spec().task_id;
    if (!is_snake_case(id)) throw RegistrationError("task id must be snake_case: '" + id + "'");
    auto [it, inserted] = tasks_.emplace(id, std::move(task));
    if (!inserted) throw RegistrationError("task already registered: " + id);
    return *it->second;
  }

  [[nodiscard]] bool contains(const std::string& id) const { return tasks_.contains(id); }

  [[nodiscard]] const Task& get(const std::string& id) const {
    auto it = tasks_.find(id);
    if (it == tasks_.end()) throw UnknownTaskError(id);
    return *it->second;
  }

  /// Ids in sorted order.
  [[nodiscard]] std::vector<std::string> ids() const {
    std::vector<std::string> out;
    out.reserve(tasks_.size());
    for (const auto& [id, _] : tasks_) out.push_back(id);
    return out;
  }

  [[nodiscard]] std::size_t size() const { return tasks_.size(); }

 private:
  std::map<std::string, std::shared_ptr<const Task>> tasks_;
};

}  // namespace polytask
