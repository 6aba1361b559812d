/*
 * Copyright 2026 The LDAF Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LDAF_SERVER_AUTH_HPP
#define LDAF_SERVER_AUTH_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include "ldaf/rdf/term.hpp"

namespace ldaf::server {

inline constexpr int kPbkdf2Iterations = 100000;
inline constexpr std::size_t kSaltBytes = 16;
inline constexpr std::size_t kHashBytes = 32;
inline constexpr std::string_view kSessionCookie = "ldaf_session";

/// Bytes from the OpenSSL CSPRNG.
inline std::vector<unsigned char> secure_random_bytes(std::size_t n) {
  std::vector<unsigned char> out(n);
  if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1) throw std::runtime_error("RAND_bytes failed");
  return out;
}

inline std::string to_hex(const std::vector<unsigned char>& bytes) {
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out += kHex[b >> 4];
    out += kHex[b & 15];
  }
  return out;
}

inline std::optional<std::vector<unsigned char>> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::vector<unsigned char> out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<unsigned char>(hi * 16 + lo));
  }
  return out;
}

inline std::vector<unsigned char> pbkdf2_sha256(std::string_view password, const std::vector<unsigned char>& salt,
                                                int iterations) {
  std::vector<unsigned char> out(kHashBytes);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(), static_cast<int>(salt.size()),
                        iterations, EVP_sha256(), static_cast<int>(out.size()), out.data()) != 1)
    throw std::runtime_error("PBKDF2 failed");
  return out;
}

/// Stored credential: `pbkdf2-sha256$<iterations>$<hex hash>` plus a hex salt.
struct PasswordRecord {
  std::string hash;
  std::string salt;
};

inline PasswordRecord hash_password(std::string_view password, int iterations = kPbkdf2Iterations) {
  auto salt = secure_random_bytes(kSaltBytes);
  return PasswordRecord{"pbkdf2-sha256$" + std::to_string(iterations) + "$" + to_hex(pbkdf2_sha256(password, salt, iterations)),
                        to_hex(salt)};
}

inline bool verify_password(std::string_view password, const PasswordRecord& record) {
  std::string_view h = record.hash;
  constexpr std::string_view kScheme = "pbkdf2-sha256$";
  if (!h.starts_with(kScheme)) return false;
  h.remove_prefix(kScheme.size());
  auto dollar = h.find('$');
  if (dollar == std::string_view::npos) return false;
  int iterations = 0;
  for (char c : h.substr(0, dollar)) {
    if (c < '0' || c > '9' || iterations > 100'000'000) return false;
    iterations = iterations * 10 + (c - '0');
  }
  auto expected = from_hex(h.substr(dollar + 1));
  auto salt = from_hex(record.salt);
  if (iterations < 1 || !expected || !salt || expected->size() != kHashBytes) return false;
  auto actual = pbkdf2_sha256(password, *salt, iterations);
  return CRYPTO_memcmp(actual.data(), expected->data(), kHashBytes) == 0;
}

/// Token -> user table with expiry. Safe for concurrent use.
class SessionStore {
 public:
  using Clock = std::chrono::system_clock;

  explicit SessionStore(std::chrono::minutes ttl, std::function<Clock::time_point()> now = Clock::now)
      : ttl_(ttl), now_(std::move(now)) {}

  /// Issues a fresh 32-hex token for `user`.
  std::string create(const rdf::Iri& user) {
    std::unique_lock lock(mutex_);
    purge_locked();
    std::string token;
    do {
      token = to_hex(secure_random_bytes(16));
    } while (sessions_.contains(token));
    sessions_.emplace(token, Entry{user, now_() + ttl_});
    return token;
  }

  std::optional<rdf::Iri> lookup(std::string_view token) const {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(std::string(token));
    if (it == sessions_.end() || it->second.expires_at <= now_()) return std::nullopt;
    return it->second.user;
  }

  bool remove(std::string_view token) {
    std::unique_lock lock(mutex_);
    return sessions_.erase(std::string(token)) > 0;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
  }

 private:
  struct Entry {
    rdf::Iri user;
    Clock::time_point expires_at;
  };

  void purge_locked() {
    auto now = now_();
    std::erase_if(sessions_, [&](const auto& kv) { return kv.second.expires_at <= now; });
  }

  std::chrono::minutes ttl_;
  std::function<Clock::time_point()> now_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, Entry> sessions_;
};

}  // namespace ldaf::server

#endif  // LDAF_SERVER_AUTH_HPP
