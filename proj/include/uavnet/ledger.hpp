#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavnet {

class Rng;

/// 20-byte entity address, printed as 40 lowercase hex characters.
struct Address {
  std::array<std::uint8_t, 20> bytes{};

  std::string hex() const;
  static std::optional<Address> from_hex(std::string_view text);
  static Address random(Rng& rng);

  auto operator<=>(const Address&) const = default;
};

using Digest = std::array<std::uint8_t, 32>;

std::string to_hex(std::span<const std::uint8_t> bytes);
Digest sha256(std::span<const std::uint8_t> bytes);

enum class EntityKind : std::uint8_t { drone = 0, rsu = 1, sv = 2 };

std::string_view kind_name(EntityKind kind);
std::optional<EntityKind> parse_kind(std::string_view text);

/// Registration payload. Drones carry an id (<= 5 chars) and a flying-area
/// code (<= 4 chars); RSUs carry a deployed-area code (<= 4 chars); SVs
/// carry only their address.
struct EntityRecord {
  EntityKind kind = EntityKind::sv;
  Address address;
  std::string drone_id;
  std::string area_code;

  static constexpr std::size_t kMaxDroneId = 5;
  static constexpr std::size_t kMaxAreaCode = 4;

  bool within_limits() const;
  std::size_t payload_bytes() const;

  bool operator==(const EntityRecord&) const = default;
};

/// base_tx_gas + per_byte_gas * payload_bytes + per-kind overhead.
struct GasSchedule {
  std::uint64_t base_tx_gas = 21000;
  std::uint64_t per_byte_gas = 68;
  std::uint64_t drone_overhead = 20000;
  std::uint64_t rsu_overhead = 20000;
  std::uint64_t sv_overhead = 20000;

  std::uint64_t overhead(EntityKind kind) const;
};

std::uint64_t gas_cost(const EntityRecord& record, const GasSchedule& schedule);

struct Transaction {
  Address sender;
  EntityRecord payload;
  std::uint64_t gas_used = 0;

  /// Canonical encoding, hashed into the enclosing block.
  std::vector<std::uint8_t> encode() const;
  static std::optional<Transaction> decode(std::span<const std::uint8_t> bytes);

  bool operator==(const Transaction&) const = default;
};

struct Block {
  std::uint64_t index = 0;
  Digest prev_hash{};
  std::vector<Transaction> transactions;
  std::uint64_t gas_limit = 0;
  std::uint64_t gas_total = 0;
  Digest hash{};

  /// SHA-256 over index, gas limit, gas total, previous hash and every
  /// encoded transaction.
  Digest compute_hash() const;

  bool operator==(const Block&) const = default;
};

/// Hash, linkage, index and gas accounting checks over a block sequence
/// that starts at genesis.
bool verify_blocks(std::span<const Block> blocks);

enum class RegisterStatus { accepted, unauthorized, payload_too_long, already_registered };

std::string_view status_name(RegisterStatus status);

struct AuthResult {
  bool authenticated = false;
  std::size_t comparisons = 0;
};

struct MineResult {
  Block block;
  std::vector<Transaction> rejected_over_gas_limit;
};

struct LedgerStats {
  std::size_t blocks = 0;  // including genesis
  std::size_t committed_transactions = 0;
  std::size_t pending_transactions = 0;
  std::uint64_t committed_gas = 0;
  std::size_t registered_drones = 0;
  std::size_t registered_rsus = 0;
  std::size_t registered_svs = 0;
};

/// Single-writer permissioned chain. Only the command-and-control address
/// may register entities; accepted registrations wait in a pending pool
/// until mined, and only mined records count as registered.
class LedgerChain {
 public:
  explicit LedgerChain(Address cc_address, GasSchedule schedule = {});

  RegisterStatus register_entity(const Address& sender, const EntityRecord& record);

  /// Linear scan of the registered addresses of one kind, in registration order.
  AuthResult authenticate(const Address& address, EntityKind kind) const;
  /// Linear scan over every registered address.
  AuthResult authenticate(const Address& address) const;

  MineResult mine_block(std::uint64_t gas_limit);

  /// verify_blocks plus: every committed sender is the C&C, and the registry
  /// equals a replay of the committed transactions.
  bool verify() const;

  const Address& cc_address() const { return cc_; }
  const GasSchedule& schedule() const { return schedule_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::deque<Transaction>& pending() const { return pending_; }
  const std::map<Address, EntityRecord>& registry() const { return registry_; }
  LedgerStats stats() const;

  /// Text export: one block per line, then one line per pending transaction.
  std::string export_text() const;
  /// Throws Error(ledger) on malformed input. Tampering is not an import
  /// error; call verify() on the result.
  static LedgerChain import_text(std::string_view text);

  /// Rebuilds the address registry from committed transactions.
  static std::map<Address, EntityRecord> replay(std::span<const Block> blocks);

 private:
  void commit(const Transaction& tx);

  Address cc_;
  GasSchedule schedule_;
  std::vector<Block> blocks_;
  std::deque<Transaction> pending_;
  std::map<Address, EntityRecord> registry_;
  std::array<std::vector<Address>, 3> by_kind_;
  std::vector<Address> all_;
};

}  // namespace uavnet
