#include "uavnet/ledger.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <sstream>

#include "uavnet/error.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<std::vector<std::uint8_t>> from_hex(std::string_view text) {
  if (text.size() % 2 != 0) return std::nullopt;
  std::vector<std::uint8_t> out(text.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int hi = hex_value(text[2 * k]);
    const int lo = hex_value(text[2 * k + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[k] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return out;
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_string(std::vector<std::uint8_t>& out, const std::string& s) {
  out.push_back(static_cast<std::uint8_t>(std::min<std::size_t>(s.size(), 255)));
  out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(s.size(), 255)));
}

struct Reader {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool take(std::size_t n) const { return pos + n <= bytes.size(); }
  std::optional<std::uint64_t> u64() {
    if (!take(8)) return std::nullopt;
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v = (v << 8) | bytes[pos++];
    return v;
  }
  std::optional<std::uint8_t> u8() {
    if (!take(1)) return std::nullopt;
    return bytes[pos++];
  }
  bool fill(std::span<std::uint8_t> dst) {
    if (!take(dst.size())) return false;
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), dst.size(), dst.begin());
    pos += dst.size();
    return true;
  }
  std::optional<std::string> str() {
    auto n = u8();
    if (!n || !take(*n)) return std::nullopt;
    std::string s(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                  bytes.begin() + static_cast<std::ptrdiff_t>(pos + *n));
    pos += *n;
    return s;
  }
};

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCategory::ledger, "malformed ledger file: " + what);
}

std::uint64_t parse_u64(std::string_view tok, const char* field) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) malformed(std::string("bad ") + field);
  return v;
}

Digest parse_digest(std::string_view tok, const char* field) {
  auto bytes = from_hex(tok);
  if (!bytes || bytes->size() != 32) malformed(std::string("bad ") + field);
  Digest d{};
  std::copy(bytes->begin(), bytes->end(), d.begin());
  return d;
}

// "<len>:<hex>"
Transaction parse_tx(std::string_view tok) {
  const auto colon = tok.find(':');
  if (colon == std::string_view::npos) malformed("transaction without length prefix");
  const std::uint64_t len = parse_u64(tok.substr(0, colon), "transaction length");
  auto bytes = from_hex(tok.substr(colon + 1));
  if (!bytes || bytes->size() != len) malformed("transaction length mismatch");
  auto tx = Transaction::decode(*bytes);
  if (!tx) malformed("undecodable transaction");
  return *tx;
}

std::string tx_token(const Transaction& tx) {
  const auto bytes = tx.encode();
  return std::to_string(bytes.size()) + ":" + to_hex(bytes);
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(kHexDigits[b >> 4]);
    s.push_back(kHexDigits[b & 0x0f]);
  }
  return s;
}

Digest sha256(std::span<const std::uint8_t> bytes) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw Error(ErrorCategory::ledger, "SHA-256 computation failed");
  }
  return out;
}

std::string Address::hex() const { return to_hex(bytes); }

std::optional<Address> Address::from_hex(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  auto raw = uavnet::from_hex(text);
  if (!raw || raw->size() != 20) return std::nullopt;
  Address a;
  std::copy(raw->begin(), raw->end(), a.bytes.begin());
  return a;
}

Address Address::random(Rng& rng) {
  Address a;
  for (std::size_t k = 0; k < a.bytes.size(); k += 4) {
    const std::uint64_t word = rng.next_u64();
    for (std::size_t b = 0; b < 4; ++b) a.bytes[k + b] = static_cast<std::uint8_t>(word >> (8 * b));
  }
  return a;
}

std::string_view kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::drone: return "drone";
    case EntityKind::rsu: return "rsu";
    case EntityKind::sv: return "sv";
  }
  return "unknown";
}

std::optional<EntityKind> parse_kind(std::string_view text) {
  if (text == "drone") return EntityKind::drone;
  if (text == "rsu") return EntityKind::rsu;
  if (text == "sv") return EntityKind::sv;
  return std::nullopt;
}

bool EntityRecord::within_limits() const {
  switch (kind) {
    case EntityKind::drone:
      return drone_id.size() <= kMaxDroneId && area_code.size() <= kMaxAreaCode;
    case EntityKind::rsu:
      return drone_id.empty() && area_code.size() <= kMaxAreaCode;
    case EntityKind::sv:
      return drone_id.empty() && area_code.empty();
  }
  return false;
}

std::size_t EntityRecord::payload_bytes() const {
  return address.bytes.size() + drone_id.size() + area_code.size();
}

std::uint64_t GasSchedule::overhead(EntityKind kind) const {
  switch (kind) {
    case EntityKind::drone: return drone_overhead;
    case EntityKind::rsu: return rsu_overhead;
    case EntityKind::sv: return sv_overhead;
  }
  return 0;
}

std::uint64_t gas_cost(const EntityRecord& record, const GasSchedule& schedule) {
  return schedule.base_tx_gas + schedule.per_byte_gas * record.payload_bytes() +
         schedule.overhead(record.kind);
}

std::vector<std::uint8_t> Transaction::encode() const {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), sender.bytes.begin(), sender.bytes.end());
  out.push_back(static_cast<std::uint8_t>(payload.kind));
  out.insert(out.end(), payload.address.bytes.begin(), payload.address.bytes.end());
  put_string(out, payload.drone_id);
  put_string(out, payload.area_code);
  put_u64(out, gas_used);
  return out;
}

std::optional<Transaction> Transaction::decode(std::span<const std::uint8_t> bytes) {
  Reader r{bytes};
  Transaction tx;
  if (!r.fill(tx.sender.bytes)) return std::nullopt;
  auto kind = r.u8();
  if (!kind) return std::nullopt;
  tx.payload.kind = static_cast<EntityKind>(*kind);
  if (!r.fill(tx.payload.address.bytes)) return std::nullopt;
  auto id = r.str();
  auto area = r.str();
  auto gas = r.u64();
  if (!id || !area || !gas || r.pos != bytes.size()) return std::nullopt;
  tx.payload.drone_id = std::move(*id);
  tx.payload.area_code = std::move(*area);
  tx.gas_used = *gas;
  return tx;
}

Digest Block::compute_hash() const {
  std::vector<std::uint8_t> buf;
  put_u64(buf, index);
  put_u64(buf, gas_limit);
  put_u64(buf, gas_total);
  buf.insert(buf.end(), prev_hash.begin(), prev_hash.end());
  put_u32(buf, static_cast<std::uint32_t>(transactions.size()));
  for (const auto& tx : transactions) {
    const auto enc = tx.encode();
    put_u32(buf, static_cast<std::uint32_t>(enc.size()));
    buf.insert(buf.end(), enc.begin(), enc.end());
  }
  return sha256(buf);
}

bool verify_blocks(std::span<const Block> blocks) {
  if (blocks.empty()) return false;
  Digest prev{};
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Block& b = blocks[k];
    if (b.index != k || b.prev_hash != prev) return false;
    std::uint64_t gas = 0;
    for (const auto& tx : b.transactions) gas += tx.gas_used;
    if (gas != b.gas_total || b.gas_total > b.gas_limit) return false;
    if (b.compute_hash() != b.hash) return false;
    prev = b.hash;
  }
  return true;
}

std::string_view status_name(RegisterStatus status) {
  switch (status) {
    case RegisterStatus::accepted: return "accepted";
    case RegisterStatus::unauthorized: return "unauthorized";
    case RegisterStatus::payload_too_long: return "payload-too-long";
    case RegisterStatus::already_registered: return "already-registered";
  }
  return "unknown";
}

LedgerChain::LedgerChain(Address cc_address, GasSchedule schedule)
    : cc_(cc_address), schedule_(schedule) {
  Block genesis;
  genesis.hash = genesis.compute_hash();
  blocks_.push_back(std::move(genesis));
}

RegisterStatus LedgerChain::register_entity(const Address& sender, const EntityRecord& record) {
  if (sender != cc_) return RegisterStatus::unauthorized;
  if (!record.within_limits()) return RegisterStatus::payload_too_long;
  if (registry_.contains(record.address)) return RegisterStatus::already_registered;
  const bool queued = std::any_of(pending_.begin(), pending_.end(), [&](const Transaction& tx) {
    return tx.payload.address == record.address;
  });
  if (queued) return RegisterStatus::already_registered;
  pending_.push_back({sender, record, gas_cost(record, schedule_)});
  return RegisterStatus::accepted;
}

AuthResult LedgerChain::authenticate(const Address& address, EntityKind kind) const {
  AuthResult res;
  for (const auto& a : by_kind_[static_cast<std::size_t>(kind)]) {
    ++res.comparisons;
    if (a == address) {
      res.authenticated = true;
      break;
    }
  }
  return res;
}

AuthResult LedgerChain::authenticate(const Address& address) const {
  AuthResult res;
  for (const auto& a : all_) {
    ++res.comparisons;
    if (a == address) {
      res.authenticated = true;
      break;
    }
  }
  return res;
}

void LedgerChain::commit(const Transaction& tx) {
  registry_.emplace(tx.payload.address, tx.payload);
  const auto k = static_cast<std::size_t>(tx.payload.kind);
  if (k < by_kind_.size()) by_kind_[k].push_back(tx.payload.address);
  all_.push_back(tx.payload.address);
}

MineResult LedgerChain::mine_block(std::uint64_t gas_limit) {
  MineResult res;
  Block& b = res.block;
  b.index = blocks_.size();
  b.prev_hash = blocks_.back().hash;
  b.gas_limit = gas_limit;
  while (!pending_.empty()) {
    const Transaction& next = pending_.front();
    if (next.gas_used > gas_limit) {
      res.rejected_over_gas_limit.push_back(next);
      pending_.pop_front();
      continue;
    }
    if (b.gas_total + next.gas_used > gas_limit) break;
    b.gas_total += next.gas_used;
    b.transactions.push_back(next);
    pending_.pop_front();
  }
  b.hash = b.compute_hash();
  for (const auto& tx : b.transactions) commit(tx);
  blocks_.push_back(b);
  return res;
}

std::map<Address, EntityRecord> LedgerChain::replay(std::span<const Block> blocks) {
  std::map<Address, EntityRecord> reg;
  for (const auto& b : blocks) {
    for (const auto& tx : b.transactions) reg.emplace(tx.payload.address, tx.payload);
  }
  return reg;
}

bool LedgerChain::verify() const {
  if (!verify_blocks(blocks_)) return false;
  for (const auto& b : blocks_) {
    for (const auto& tx : b.transactions) {
      if (tx.sender != cc_ || !tx.payload.within_limits()) return false;
    }
  }
  return replay(blocks_) == registry_;
}

LedgerStats LedgerChain::stats() const {
  LedgerStats s;
  s.blocks = blocks_.size();
  for (const auto& b : blocks_) {
    s.committed_transactions += b.transactions.size();
    s.committed_gas += b.gas_total;
  }
  s.pending_transactions = pending_.size();
  s.registered_drones = by_kind_[0].size();
  s.registered_rsus = by_kind_[1].size();
  s.registered_svs = by_kind_[2].size();
  return s;
}

std::string LedgerChain::export_text() const {
  std::ostringstream os;
  os << "uavnet-ledger 1\n";
  os << "cc " << cc_.hex() << '\n';
  os << "schedule " << schedule_.base_tx_gas << ' ' << schedule_.per_byte_gas << ' '
     << schedule_.drone_overhead << ' ' << schedule_.rsu_overhead << ' ' << schedule_.sv_overhead
     << '\n';
  for (const auto& b : blocks_) {
    os << "B " << b.index << ' ' << b.gas_limit << ' ' << b.gas_total << ' ' << to_hex(b.prev_hash)
       << ' ' << to_hex(b.hash) << ' ' << b.transactions.size();
    for (const auto& tx : b.transactions) os << ' ' << tx_token(tx);
    os << '\n';
  }
  for (const auto& tx : pending_) os << "P " << tx_token(tx) << '\n';
  return os.str();
}

LedgerChain LedgerChain::import_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "uavnet-ledger 1") malformed("missing header");

  std::optional<Address> cc;
  GasSchedule schedule;
  std::vector<Block> blocks;
  std::deque<Transaction> pending;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "cc") {
      std::string hex;
      ls >> hex;
      cc = Address::from_hex(hex);
      if (!cc) malformed("bad cc address");
    } else if (tag == "schedule") {
      std::string a, b, c, d, e;
      ls >> a >> b >> c >> d >> e;
      schedule = {parse_u64(a, "base gas"), parse_u64(b, "per-byte gas"),
                  parse_u64(c, "drone overhead"), parse_u64(d, "rsu overhead"),
                  parse_u64(e, "sv overhead")};
    } else if (tag == "B") {
      std::string idx, limit, total, prev, hash, count;
      ls >> idx >> limit >> total >> prev >> hash >> count;
      Block blk;
      blk.index = parse_u64(idx, "block index");
      blk.gas_limit = parse_u64(limit, "gas limit");
      blk.gas_total = parse_u64(total, "gas total");
      blk.prev_hash = parse_digest(prev, "prev hash");
      blk.hash = parse_digest(hash, "block hash");
      const std::uint64_t n = parse_u64(count, "transaction count");
      for (std::uint64_t k = 0; k < n; ++k) {
        std::string tok;
        if (!(ls >> tok)) malformed("block truncated");
        blk.transactions.push_back(parse_tx(tok));
      }
      blocks.push_back(std::move(blk));
    } else if (tag == "P") {
      std::string tok;
      ls >> tok;
      pending.push_back(parse_tx(tok));
    } else {
      malformed("unknown record tag '" + tag + "'");
    }
  }
  if (!cc) malformed("missing cc line");
  if (blocks.empty()) malformed("no genesis block");

  LedgerChain chain(*cc, schedule);
  chain.blocks_ = std::move(blocks);
  chain.pending_ = std::move(pending);
  for (const auto& b : chain.blocks_) {
    for (const auto& tx : b.transactions) {
      if (!chain.registry_.contains(tx.payload.address)) chain.commit(tx);
    }
  }
  return chain;
}

}  // namespace uavnet
