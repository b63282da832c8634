// Copyright 2026 The cplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cplab/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace cplab {
namespace {

struct MdDeleter {
  void operator()(EVP_MD* md) const { EVP_MD_free(md); }
};
struct CtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

const EVP_MD* sha256_md() {
  static const std::unique_ptr<EVP_MD, MdDeleter> md(
      EVP_MD_fetch(nullptr, "SHA256", nullptr));
  if (!md) throw std::runtime_error("SHA256 unavailable");
  return md.get();
}

// One reusable context per thread; re-initialising is far cheaper than
// creating a context per digest.
EVP_MD_CTX* thread_ctx() {
  thread_local std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
  return ctx.get();
}

Digest finish(EVP_MD_CTX* ctx) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
    throw std::runtime_error("SHA256 failed");
  }
  return out;
}

}  // namespace

Digest sha256(std::span<const uint8_t> data) {
  EVP_MD_CTX* ctx = thread_ctx();
  EVP_DigestInit_ex2(ctx, sha256_md(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  return finish(ctx);
}

Digest sha256(std::span<const uint8_t> a, std::span<const uint8_t> b) {
  EVP_MD_CTX* ctx = thread_ctx();
  EVP_DigestInit_ex2(ctx, sha256_md(), nullptr);
  EVP_DigestUpdate(ctx, a.data(), a.size());
  EVP_DigestUpdate(ctx, b.data(), b.size());
  return finish(ctx);
}

}  // namespace cplab
