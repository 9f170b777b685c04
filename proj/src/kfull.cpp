#include "kfa/kfull.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>

#include "kfa/parallel.hpp"

namespace kfa {

u128 KFullRep::value() const {
  auto v = checked_pow(m, k);
  for (std::size_t i = 0; v && i < parts.size(); ++i) {
    auto p = checked_pow(parts[i], k + static_cast<unsigned>(i) + 1);
    v = p ? checked_mul(*v, *p) : std::nullopt;
  }
  if (!v) throw OverflowError("KFullRep::value: exceeds 128 bits");
  return *v;
}

namespace {

void require_k(unsigned k, const char* op) {
  if (k < 2) throw DomainError(std::string(op) + ": k must be >= 2");
}

}  // namespace

bool is_kfull(u64 n, unsigned k, const FactorSieve& sieve) {
  require_k(k, "is_kfull");
  for (const auto& [p, e] : sieve.factorize(n)) {
    if (e < k) return false;
  }
  return true;
}

KFullRep rep_of(u64 n, unsigned k, const FactorSieve& sieve) {
  require_k(k, "rep_of");
  KFullRep rep;
  rep.k = k;
  rep.parts.assign(k - 1, 1);
  u64 m = 1;
  for (const auto& [p, e] : sieve.factorize(n)) {
    if (e < k) {
      throw DomainError("rep_of: " + std::to_string(n) + " is not " +
                        std::to_string(k) + "-full (prime " + std::to_string(p) +
                        " has exponent " + std::to_string(e) + ")");
    }
    const unsigned r = e % k;
    unsigned m_exp = e / k;
    if (r != 0) {
      // p^e = p^(k+r) * p^(k * (e - k - r) / k)
      rep.parts[r - 1] *= p;
      m_exp = (e - (k + r)) / k;
    }
    for (unsigned i = 0; i < m_exp; ++i) m *= p;
  }
  rep.m = m;
  return rep;
}

void TupleSet::push(std::span<const u64> parts, u128 product, unsigned omega) {
  parts_.insert(parts_.end(), parts.begin(), parts.end());
  products_.push_back(product);
  omegas_.push_back(static_cast<std::uint16_t>(omega));
}

namespace detail {

void validate_kfull_args(u64 N, unsigned k) {
  require_k(k, "kfull");
  if (N < 1) throw DomainError("kfull: N must be >= 1");
  if (N > kMaxN) {
    throw OverflowError("kfull: N=" + std::to_string(N) + " exceeds supported 10^18");
  }
}

}  // namespace detail

u64 kfull_sieve_limit(u64 N, unsigned k) {
  detail::validate_kfull_args(N, k);
  return std::max<u64>(2, static_cast<u64>(integer_kth_root(N, k)));
}

TupleSet admissible_tuples(u64 N, unsigned k, const FactorSieve& sieve,
                           std::span<const u64> caps) {
  detail::validate_kfull_args(N, k);
  TupleSet out(k);
  for_each_tuple(k, N, caps, sieve,
                 [&](std::span<const u64> parts, u128 product, unsigned omega) {
                   out.push(parts, product, omega);
                 });
  return out;
}

namespace {

void require_m_table(u64 N, unsigned k, const FactorSieve& sieve, const char* op) {
  const u64 need = static_cast<u64>(integer_kth_root(N, k));
  if (sieve.limit() < need) {
    throw DomainError(std::string(op) + ": sieve limit " + std::to_string(sieve.limit()) +
                      " below floor(N^(1/k)) = " + std::to_string(need));
  }
}

u64 m_bound(u64 N, u128 product, unsigned k) {
  return static_cast<u64>(integer_kth_root(N / product, k));
}

}  // namespace

void enumerate_kfull(u64 N, unsigned k, const FactorSieve& sieve,
                     const std::function<void(const KFullEntry&)>& sink) {
  detail::validate_kfull_args(N, k);
  require_m_table(N, k, sieve, "enumerate_kfull");
  const auto om = sieve.omega_table();
  KFullEntry entry;
  entry.rep.k = k;
  for_each_tuple(k, N, {}, sieve,
                 [&](std::span<const u64> parts, u128 product, unsigned omega) {
                   entry.rep.parts.assign(parts.begin(), parts.end());
                   const u64 M = m_bound(N, product, k);
                   for (u64 m = 1; m <= M; ++m) {
                     entry.rep.m = m;
                     entry.value = static_cast<u64>(*checked_pow(m, k) * product);
                     entry.omega = omega + k * (m > 1 ? om[m] : 0U);
                     sink(entry);
                   }
                 });
}

std::vector<KFullEntry> collect_kfull(u64 N, unsigned k, const FactorSieve& sieve,
                                      Order order) {
  std::vector<KFullEntry> out;
  enumerate_kfull(N, k, sieve, [&](const KFullEntry& e) { out.push_back(e); });
  if (order == Order::by_value) {
    std::sort(out.begin(), out.end(),
              [](const KFullEntry& a, const KFullEntry& b) { return a.value < b.value; });
  }
  return out;
}

u64 count_kfull(u64 N, unsigned k, const FactorSieve& sieve) {
  detail::validate_kfull_args(N, k);
  u64 total = 0;
  for_each_tuple(k, N, {}, sieve, [&](std::span<const u64>, u128 product, unsigned) {
    total += m_bound(N, product, k);
  });
  return total;
}

u64 count_kfull(u64 N, unsigned k) {
  detail::validate_kfull_args(N, k);
  const u64 limit = std::max<u64>(2, static_cast<u64>(integer_kth_root(N, k + 1)));
  return count_kfull(N, k, build_sieve(limit));
}

u64 tuple_count(u64 N, unsigned k, const FactorSieve& sieve) {
  detail::validate_kfull_args(N, k);
  u64 total = 0;
  for_each_tuple(k, N, {}, sieve, [&](std::span<const u64>, u128, unsigned) { ++total; });
  return total;
}

OmegaHistogram kfull_omega_histogram(u64 N, unsigned k, const FactorSieve& sieve) {
  detail::validate_kfull_args(N, k);
  require_m_table(N, k, sieve, "kfull_omega_histogram");
  const TupleSet tuples = admissible_tuples(N, k, sieve);

  struct Item {
    std::size_t tuple;
    Block ms;
  };
  std::vector<Item> items;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (const Block& b : fixed_blocks(m_bound(N, tuples.product(t), k), kDefaultBlock)) {
      items.push_back({t, b});
    }
  }

  const auto om = sieve.omega_table();
  std::vector<OmegaHistogram> partial(items.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::array<u64, 64> local{};
    for (u64 m = items[i].ms.begin + 1; m <= items[i].ms.end; ++m) ++local[om[m]];
    const unsigned base = tuples.omega(items[i].tuple);
    for (unsigned w = 0; w < local.size(); ++w) {
      if (local[w]) partial[i].add(base + k * w, local[w]);
    }
  }
  OmegaHistogram out;
  for (const auto& h : partial) out.merge(h);
  return out;
}

// --- binary dump ------------------------------------------------------------

namespace {

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<u64>(value) >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw DomainError("read_kfull_dump: truncated stream");
  u64 v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<u64>(bytes[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

void write_dump_header(std::ostream& out, const DumpHeader& header) {
  out.write(DumpHeader::kMagic, 8);
  put_le<std::uint32_t>(out, header.version);
  put_le<std::uint32_t>(out, header.k);
  put_le<u64>(out, header.N);
  put_le<u64>(out, header.count);
}

void write_dump_record(std::ostream& out, const KFullEntry& entry) {
  put_le<u64>(out, entry.value);
  put_le<u64>(out, entry.rep.m);
  for (u64 part : entry.rep.parts) put_le<u64>(out, part);
  put_le<std::uint32_t>(out, entry.omega);
}

std::vector<KFullEntry> read_kfull_dump(std::istream& in, DumpHeader* header_out) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || !std::equal(magic.begin(), magic.end(), DumpHeader::kMagic)) {
    throw DomainError("read_kfull_dump: bad magic");
  }
  DumpHeader header;
  header.version = get_le<std::uint32_t>(in);
  if (header.version != DumpHeader::kVersion) {
    throw DomainError("read_kfull_dump: unsupported version " +
                      std::to_string(header.version));
  }
  header.k = get_le<std::uint32_t>(in);
  if (header.k < 2) throw DomainError("read_kfull_dump: k must be >= 2");
  header.N = get_le<u64>(in);
  header.count = get_le<u64>(in);

  std::vector<KFullEntry> entries;
  entries.reserve(static_cast<std::size_t>(std::min<u64>(header.count, 1u << 20)));
  for (u64 i = 0; i < header.count; ++i) {
    KFullEntry e;
    e.rep.k = header.k;
    e.value = get_le<u64>(in);
    e.rep.m = get_le<u64>(in);
    e.rep.parts.resize(header.k - 1);
    for (auto& part : e.rep.parts) part = get_le<u64>(in);
    e.omega = get_le<std::uint32_t>(in);
    entries.push_back(std::move(e));
  }
  if (header_out) *header_out = header;
  return entries;
}

}  // namespace kfa
