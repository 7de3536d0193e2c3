#include "wdc/code.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "wdc/error.hpp"
#include "wdc/rng.hpp"

namespace wdc {

namespace {

constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 20;

std::optional<std::uint64_t> codeword_count(const BlockCode& code) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < code.k(); ++i) {
    total *= code.field()->order();
    if (total > kExhaustiveLimit) return std::nullopt;
  }
  return total;
}

// Visits every codeword (one lane) by stepping the message like an odometer;
// each step adds (new - old) * G_i for the digits that change.
template <typename Visit>
void for_each_codeword(const BlockCode& code, Visit&& visit) {
  if (!codeword_count(code)) {
    throw Error(ErrorCode::TooLargeForExhaustive, code.name() + " has more than 2^20 codewords");
  }
  const Field& f = *code.field();
  const Matrix& g = code.generator();
  Vector message(code.k(), 0);
  Vector word(code.n(), 0);
  for (;;) {
    visit(std::span<const Symbol>(word));
    std::size_t i = 0;
    for (; i < code.k(); ++i) {
      const Symbol old = message[i];
      const auto next = static_cast<Symbol>((old + 1u) % f.order());
      message[i] = next;
      f.axpy(f.sub(next, old), g.row(i), word);
      if (next != 0) break;
    }
    if (i == code.k()) return;
  }
}

std::vector<std::vector<std::size_t>> enumerate_min_supports(const BlockCode& code, std::size_t dmin) {
  std::vector<std::vector<std::size_t>> supports;
  for_each_codeword(code, [&](std::span<const Symbol> word) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i] != 0) s.push_back(i);
    }
    if (s.size() == dmin) supports.push_back(std::move(s));
  });
  std::sort(supports.begin(), supports.end());
  supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
  return supports;
}

std::vector<std::size_t> random_subset(std::size_t n, std::size_t size, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `size` entries are a uniform subset.
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void check_lanes(std::span<const Packet> packets, std::size_t expected, const char* what) {
  if (packets.size() != expected) {
    throw Error(ErrorCode::LengthMismatch, std::string(what) + ": expected " + std::to_string(expected) +
                                               " packets, got " + std::to_string(packets.size()));
  }
  for (const auto& p : packets) {
    if (p.symbols.size() != packets.front().symbols.size()) {
      throw Error(ErrorCode::LengthMismatch, std::string(what) + ": packets of unequal length");
    }
  }
}

}  // namespace

std::string_view to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::ReedSolomon: return "RS";
    case CodeKind::Hamming: return "Hamming";
    case CodeKind::FromParityCheck: return "ParityCheck";
  }
  return "Unknown";
}

BlockCode::BlockCode(CodeKind kind, FieldPtr field, Matrix parity_part)
    : kind_(kind),
      field_(std::move(field)),
      n_(parity_part.rows() + parity_part.cols()),
      k_(parity_part.rows()),
      parity_part_(std::move(parity_part)),
      generator_(field_, k_, n_),
      parity_check_(field_, n_ - k_, n_) {
  const Field& f = *field_;
  const std::size_t r = n_ - k_;
  for (std::size_t i = 0; i < k_; ++i) {
    generator_(i, i) = 1;
    for (std::size_t j = 0; j < r; ++j) {
      generator_(i, k_ + j) = parity_part_(i, j);
      parity_check_(j, i) = f.neg(parity_part_(i, j));
    }
  }
  for (std::size_t j = 0; j < r; ++j) parity_check_(j, k_ + j) = 1;
}

BlockCode BlockCode::reed_solomon(std::size_t n, std::size_t k, FieldPtr field) {
  if (!field) throw Error(ErrorCode::InvalidParameters, "RS code needs a field");
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::InvalidParameters,
                "RS code needs 1 <= k < n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  if (n > field->order()) {
    throw Error(ErrorCode::LengthExceedsField,
                "RS(" + std::to_string(n) + "," + std::to_string(k) + ") does not fit in " + field->name());
  }
  const Field& f = *field;
  Matrix vandermonde(field, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) vandermonde(i, j) = f.pow(static_cast<Symbol>(j), i);
  }
  std::vector<std::size_t> info(k);
  std::iota(info.begin(), info.end(), std::size_t{0});
  const Matrix systematic = inverse(vandermonde.select_columns(info)) * vandermonde;
  Matrix parity(field, k, n - k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n - k; ++j) parity(i, j) = systematic(i, k + j);
  }
  BlockCode code(CodeKind::ReedSolomon, field, std::move(parity));
  code.dmin_ = n - k + 1;
  code.eval_points_.resize(n);
  std::iota(code.eval_points_.begin(), code.eval_points_.end(), Symbol{0});
  return code;
}

BlockCode BlockCode::hamming(unsigned m) {
  if (m < 2 || m > 10) throw Error(ErrorCode::InvalidParameters, "Hamming code needs 2 <= m <= 10");
  const auto field = Field::binary(1);
  const std::size_t n = (std::size_t{1} << m) - 1;
  const std::size_t k = n - m;

  std::vector<std::uint32_t> columns;
  for (std::uint32_t v = 1; v <= n; ++v) {
    if (!std::has_single_bit(v)) columns.push_back(v);
  }
  for (unsigned b = 0; b < m; ++b) columns.push_back(1u << b);

  // H = [A | I_m] with A's column i the i-th non-power-of-two value; over
  // GF(2), P = A^T.
  Matrix parity(field, k, m);
  for (std::size_t i = 0; i < k; ++i) {
    for (unsigned b = 0; b < m; ++b) parity(i, b) = (columns[i] >> b) & 1u;
  }
  BlockCode code(CodeKind::Hamming, field, std::move(parity));
  code.dmin_ = 3;

  std::vector<std::size_t> position(n + 1);
  for (std::size_t i = 0; i < n; ++i) position[columns[i]] = i;
  for (std::uint32_t a = 1; a <= n; ++a) {
    for (std::uint32_t b = a + 1; b <= n; ++b) {
      const std::uint32_t c = a ^ b;
      if (c <= b) continue;
      std::vector<std::size_t> s = {position[a], position[b], position[c]};
      std::sort(s.begin(), s.end());
      code.min_supports_.push_back(std::move(s));
    }
  }
  std::sort(code.min_supports_.begin(), code.min_supports_.end());
  return code;
}

BlockCode BlockCode::from_parity_check(const Matrix& h) {
  const auto& field = h.field();
  const Field& f = *field;
  auto [reduced, pivots] = row_reduce(h);
  const std::size_t n = h.cols();
  const std::size_t r = pivots.size();
  if (r == 0 || r >= n) {
    throw Error(ErrorCode::InvalidParameters, "parity-check matrix must have rank in [1, n-1]");
  }
  const std::size_t k = n - r;
  Matrix h_rows(field, r, n);
  for (std::size_t i = 0; i < r; ++i) std::copy(reduced.row(i).begin(), reduced.row(i).end(), h_rows.row(i).begin());

  std::vector<std::size_t> check_cols(r);
  std::iota(check_cols.begin(), check_cols.end(), k);
  Matrix normalized(field, r, n);
  try {
    normalized = inverse(h_rows.select_columns(check_cols)) * h_rows;
  } catch (const Error&) {
    throw Error(ErrorCode::NotSystematic, "the last n-k columns of H are not independent");
  }
  Matrix parity(field, k, r);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < r; ++j) parity(i, j) = f.neg(normalized(j, i));
  }
  BlockCode code(CodeKind::FromParityCheck, field, std::move(parity));
  if (codeword_count(code)) {
    code.dmin_ = min_distance_exhaustive(code);
    code.min_supports_ = enumerate_min_supports(code, *code.dmin_);
  }
  return code;
}

std::string BlockCode::name() const {
  return std::string(to_string(kind_)) + "(" + std::to_string(n_) + "," + std::to_string(k_) + ")/" + field_->name();
}

Vector BlockCode::encode_lane(std::span<const Symbol> message) const {
  if (message.size() != k_) throw Error(ErrorCode::LengthMismatch, "message lane must have k symbols");
  Vector word(n_, 0);
  std::copy(message.begin(), message.end(), word.begin());
  std::span<Symbol> parity(word.data() + k_, n_ - k_);
  for (std::size_t i = 0; i < k_; ++i) field_->axpy(message[i], parity_part_.row(i), parity);
  return word;
}

Vector BlockCode::syndrome(std::span<const Symbol> word) const { return parity_check_.apply(word); }

bool BlockCode::is_codeword(std::span<const Symbol> word) const { return is_zero(syndrome(word)); }

std::vector<Packet> encode(const BlockCode& code, std::span<const Packet> message) {
  check_lanes(message, code.k(), "encode");
  const std::size_t lanes = message.front().symbols.size();
  const std::uint64_t block = message.front().block;
  std::vector<Packet> out(code.n());
  for (std::size_t i = 0; i < code.n(); ++i) out[i] = Packet{block, i, Vector(lanes, 0)};
  Vector lane(code.k());
  for (std::size_t l = 0; l < lanes; ++l) {
    for (std::size_t i = 0; i < code.k(); ++i) lane[i] = message[i].symbols[l];
    const Vector word = code.encode_lane(lane);
    for (std::size_t i = 0; i < code.n(); ++i) out[i].symbols[l] = word[i];
  }
  return out;
}

Block make_block(const BlockCode& code, std::uint64_t id, std::span<const Packet> message) {
  Block b;
  b.id = id;
  b.message.assign(message.begin(), message.end());
  for (std::size_t i = 0; i < b.message.size(); ++i) {
    b.message[i].block = id;
    b.message[i].index = i;
  }
  b.codeword = encode(code, b.message);
  return b;
}

Block random_block(const BlockCode& code, std::uint64_t id, std::size_t lanes, Rng& rng) {
  std::vector<Packet> message(code.k());
  for (std::size_t i = 0; i < code.k(); ++i) message[i] = Packet{id, i, random_vector(*code.field(), lanes, rng)};
  return make_block(code, id, message);
}

Verdict detect(const BlockCode& code, std::span<const Packet> received) {
  check_lanes(received, code.n(), "detect");
  const std::size_t lanes = received.front().symbols.size();
  Vector lane(code.n());
  for (std::size_t l = 0; l < lanes; ++l) {
    for (std::size_t i = 0; i < code.n(); ++i) lane[i] = received[i].symbols[l];
    if (!code.is_codeword(lane)) return Verdict::Tampered;
  }
  return Verdict::Clean;
}

TamperPlan min_weight_forgery(const BlockCode& code, std::size_t lanes, Rng& rng) {
  const Field& f = *code.field();
  TamperPlan plan;
  Vector word(code.n(), 0);
  if (code.kind() == CodeKind::ReedSolomon) {
    // Codewords are evaluations of polynomials of degree < k. The polynomial
    // prod_{j outside S} (x - x_j) has degree k-1 and vanishes exactly off S.
    plan.support = random_subset(code.n(), code.n() - code.k() + 1, rng);
    std::vector<bool> in_support(code.n(), false);
    for (auto i : plan.support) in_support[i] = true;
    const auto& x = code.eval_points();
    for (auto i : plan.support) {
      Symbol value = 1;
      for (std::size_t j = 0; j < code.n(); ++j) {
        if (!in_support[j]) value = f.mul(value, f.sub(x[i], x[j]));
      }
      word[i] = value;
    }
  } else {
    const auto& supports = code.min_weight_supports();
    if (supports.empty()) {
      throw Error(ErrorCode::TooLargeForExhaustive, code.name() + ": minimum-weight supports were not enumerated");
    }
    plan.support = supports[static_cast<std::size_t>(rng.below(supports.size()))];
    auto solution = solve_homogeneous_restricted(code.parity_check(), plan.support);
    if (!solution) throw std::logic_error("enumerated support carries no codeword");
    word = std::move(*solution);
  }

  plan.delta.assign(code.n(), Vector(lanes, 0));
  for (std::size_t l = 0; l < lanes; ++l) {
    const auto scale = static_cast<Symbol>(1 + rng.below(f.order() - 1));
    for (auto i : plan.support) plan.delta[i][l] = f.mul(scale, word[i]);
  }
  return plan;
}

TamperPlan raw_corruption(const BlockCode& code, std::size_t lanes, std::size_t positions, Rng& rng) {
  if (positions < 1 || positions > code.n()) {
    throw Error(ErrorCode::InvalidParameters, "raw corruption needs 1 <= positions <= n");
  }
  const Field& f = *code.field();
  TamperPlan plan;
  plan.support = random_subset(code.n(), positions, rng);
  plan.delta.assign(code.n(), Vector(lanes, 0));
  for (auto i : plan.support) {
    for (auto& x : plan.delta[i]) x = static_cast<Symbol>(1 + rng.below(f.order() - 1));
  }
  return plan;
}

std::vector<Packet> apply_tamper(const BlockCode& code, std::span<const Packet> codeword, const TamperPlan& plan) {
  check_lanes(codeword, code.n(), "apply_tamper");
  std::vector<Packet> out(codeword.begin(), codeword.end());
  for (auto i : plan.support) {
    if (plan.delta[i].size() != out[i].symbols.size()) {
      throw Error(ErrorCode::LengthMismatch, "tamper plan lane count differs from packets");
    }
    for (std::size_t l = 0; l < out[i].symbols.size(); ++l) {
      out[i].symbols[l] = code.field()->add(out[i].symbols[l], plan.delta[i][l]);
    }
  }
  return out;
}

std::vector<std::uint64_t> weight_distribution(const BlockCode& code) {
  std::vector<std::uint64_t> counts(code.n() + 1, 0);
  for_each_codeword(code, [&](std::span<const Symbol> word) {
    const auto w = static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](Symbol s) { return s != 0; }));
    ++counts[w];
  });
  return counts;
}

std::size_t min_distance_exhaustive(const BlockCode& code) {
  const auto counts = weight_distribution(code);
  for (std::size_t w = 1; w < counts.size(); ++w) {
    if (counts[w] != 0) return w;
  }
  throw std::logic_error("code has no nonzero codeword");
}

std::size_t min_distance(const BlockCode& code) {
  if (auto d = code.known_min_distance()) return *d;
  return min_distance_exhaustive(code);
}

std::vector<Packet> scramble(std::span<const Block> blocks, Rng& rng) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidParameters, "scramble needs at least one block");
  std::vector<Packet> stream;
  for (const auto& b : blocks) stream.insert(stream.end(), b.codeword.begin(), b.codeword.end());
  rng.shuffle(std::span<Packet>(stream));
  return stream;
}

std::vector<Block> unscramble(const BlockCode& code, std::span<const Packet> stream) {
  std::map<std::uint64_t, std::vector<const Packet*>> slots;
  for (const auto& p : stream) {
    auto& slot = slots[p.block];
    if (slot.empty()) slot.assign(code.n(), nullptr);
    if (p.index >= code.n()) throw Error(ErrorCode::MissingPackets, "packet index out of range");
    if (slot[p.index] != nullptr) {
      throw Error(ErrorCode::MissingPackets, "duplicate packet " + std::to_string(p.index) + " in block " +
                                                 std::to_string(p.block));
    }
    slot[p.index] = &p;
  }
  std::vector<Block> blocks;
  for (const auto& [id, slot] : slots) {
    Block b;
    b.id = id;
    for (std::size_t i = 0; i < code.n(); ++i) {
      if (slot[i] == nullptr) {
        throw Error(ErrorCode::MissingPackets,
                    "block " + std::to_string(id) + " is missing packet " + std::to_string(i));
      }
      b.codeword.push_back(*slot[i]);
    }
    b.message.assign(b.codeword.begin(), b.codeword.begin() + static_cast<std::ptrdiff_t>(code.k()));
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace wdc
