#include "grpd/dump.hpp"

#include <algorithm>
#include <sstream>

namespace grpd {

std::string dump_groupoid(const FiniteGroupoid& x) {
  std::ostringstream out;
  out << "objects " << x.object_count() << " arrows " << x.arrow_count()
      << "\n";
  for (int f = 0; f < x.arrow_count(); ++f)
    out << f << " " << x.source(f) << " " << x.target(f) << " "
        << x.inverse(f) << "\n";
  std::vector<std::pair<std::uint64_t, int>> entries(x.data().compose.begin(),
                                                     x.data().compose.end());
  std::sort(entries.begin(), entries.end());
  const int m = std::max(x.arrow_count(), 1);
  for (const auto& [k, v] : entries)
    out << (k / m) << " " << (k % m) << " " << v << "\n";
  return out.str();
}

std::string dump_instance(const FiniteGroupoid& x,
                          const GroupoidInvolution& s) {
  std::ostringstream out;
  out << dump_groupoid(x);
  out << "sigma_obj";
  for (int o : s.object_map) out << " " << o;
  out << "\nsigma_arr";
  for (int f : s.arrow_map) out << " " << f;
  out << "\n";
  return out.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hash_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace grpd
