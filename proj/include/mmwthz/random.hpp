// SPDX-License-Identifier: Apache-2.0
//
// mmwthz - mmWave/THz propagation modelling and coverage simulation
// Copyright (C) 2026 The mmwthz authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Reproducible Monte-Carlo plumbing. Work is cut into fixed-size chunks; every chunk owns a
// random stream derived from (seed, chunk index) only, so results do not depend on how many
// worker threads process the chunks.

#ifndef MMWTHZ_RANDOM_HPP
#define MMWTHZ_RANDOM_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace mmwthz
{
    using Rng = std::mt19937_64;

    inline constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    inline Rng make_stream(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)),
                          static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                          static_cast<std::uint32_t>(splitmix64(stream ^ 0xD1B54A32D192ED03ULL)),
                          static_cast<std::uint32_t>(splitmix64(stream ^ 0xD1B54A32D192ED03ULL) >> 32)};
        return Rng(seq);
    }

    // Number of chunks needed for `items` work items
    inline std::size_t chunk_count(std::size_t items, std::size_t chunk_size)
    {
        return (items + chunk_size - 1) / chunk_size;
    }

    // Calls body(chunk_index) once for every chunk in [0, n_chunks), spread over `workers` threads.
    // The first exception thrown by any chunk is rethrown on the calling thread.
    template <typename Body>
    void for_each_chunk(std::size_t n_chunks, std::size_t workers, Body &&body)
    {
        workers = std::max<std::size_t>(1, std::min(workers, n_chunks));
        if (workers == 1)
        {
            for (std::size_t c = 0; c < n_chunks; ++c)
                body(c);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < n_chunks; c = next++)
                {
                    try
                    {
                        body(c);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next = n_chunks;
                    }
                }
            });
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}

#endif
