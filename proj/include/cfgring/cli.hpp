#pragma once

// Command-line front end. cli_run is the whole program minus process
// plumbing, so tests drive it in-process.

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cfgring/maps.hpp"
#include "cfgring/structure.hpp"

namespace cfgring {

enum ExitCode : int { kExitOk = 0, kExitFails = 1, kExitInput = 2, kExitCap = 3 };

using Binding = std::variant<ProductRing, ProductElem, RingSignature, PolyMap, MapTable>;

/// Named values, saved as one declaration per line:
///   ring NAME = <ring>
///   elem NAME in <ring> = <element>
///   sig NAME = <signature>
///   poly NAME on <ring> = <polynomial>
///   map NAME on <ring>   (then "x -> f(x)" lines and a closing "end")
class Workspace {
 public:
  void bind(const std::string& name, Binding value);
  const Binding* find(const std::string& name) const;
  const std::map<std::string, Binding>& bindings() const noexcept { return bindings_; }

  std::string serialize() const;
  static Workspace parse(std::string_view text, std::uint64_t table_cap = kDefaultTableCap);

  static Workspace load(const std::string& path, std::uint64_t table_cap = kDefaultTableCap);
  void save(const std::string& path) const;

 private:
  std::map<std::string, Binding> bindings_;
};

bool operator==(const Workspace& a, const Workspace& b);

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfgring
