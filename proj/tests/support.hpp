#pragma once

#include <cstdint>
#include <vector>

#include "uavnet/ledger.hpp"
#include "uavnet/rng.hpp"

namespace uavnet::testing {

inline void flip(std::uint8_t* bytes, std::size_t n, Rng& rng) {
  const auto bit = rng.uniform_index(n * 8);
  bytes[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
}

inline void flip_u64(std::uint64_t& v, Rng& rng) { v ^= std::uint64_t{1} << rng.uniform_index(64); }

/// Flips one random bit of one random field of one random block.
inline void mutate_one_bit(std::vector<Block>& blocks, Rng& rng) {
  Block& b = blocks[rng.uniform_index(blocks.size())];
  const std::uint64_t fields = b.transactions.empty() ? 5 : 10;
  switch (rng.uniform_index(fields)) {
    case 0: flip_u64(b.index, rng); break;
    case 1: flip(b.prev_hash.data(), b.prev_hash.size(), rng); break;
    case 2: flip_u64(b.gas_limit, rng); break;
    case 3: flip_u64(b.gas_total, rng); break;
    case 4: flip(b.hash.data(), b.hash.size(), rng); break;
    default: {
      Transaction& tx = b.transactions[rng.uniform_index(b.transactions.size())];
      auto& p = tx.payload;
      switch (rng.uniform_index(5)) {
        case 0: flip(tx.sender.bytes.data(), tx.sender.bytes.size(), rng); break;
        case 1: flip(p.address.bytes.data(), p.address.bytes.size(), rng); break;
        case 2: flip_u64(tx.gas_used, rng); break;
        case 3: {
          auto k = static_cast<std::uint8_t>(p.kind);
          flip(&k, 1, rng);
          p.kind = static_cast<EntityKind>(k);
          break;
        }
        default: {
          std::string& s = !p.drone_id.empty() && (p.area_code.empty() || rng.uniform_index(2) == 0)
                               ? p.drone_id
                               : p.area_code;
          if (s.empty()) {
            flip(tx.sender.bytes.data(), tx.sender.bytes.size(), rng);
          } else {
            flip(reinterpret_cast<std::uint8_t*>(s.data()), s.size(), rng);
          }
        }
      }
    }
  }
}

}  // namespace uavnet::testing
