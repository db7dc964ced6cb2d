#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "grpd/groupoid.hpp"
#include "grpd/involution.hpp"

namespace grpd {

// Bit-exact groupoid dump:
//   objects <n> arrows <m>
//   <i> <s> <t> <inv>          one line per arrow, ascending i
//   <j> <i> <k>                composition j∘i = k, sorted by (j, i)
std::string dump_groupoid(const FiniteGroupoid& x);

// Groupoid dump followed by the involution block:
//   sigma_obj <x0> <x1> ...
//   sigma_arr <f0> <f1> ...
std::string dump_instance(const FiniteGroupoid& x, const GroupoidInvolution& s);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);

}  // namespace grpd
