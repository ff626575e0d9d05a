#include "donorsim/results.hpp"

#include <stdexcept>

namespace donorsim {

namespace {
int find_column(const std::vector<std::string>& names, const std::string& name) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw std::out_of_range("no observable column named \"" + name + "\"");
}
}  // namespace

int TimeTrace::column(const std::string& name) const { return find_column(names, name); }
int SweepGrid::column(const std::string& name) const { return find_column(names, name); }

}  // namespace donorsim
