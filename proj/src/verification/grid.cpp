#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include "isokit/verification.hpp"

namespace isokit {

Grid::Grid(Domain domain, int nx, int ny) : domain_(std::move(domain)), nx_(nx), ny_(ny)
{
    if (nx < 2 || ny < 2) {
        throw SpecError("grid", "needs at least 2 samples per axis, got " + std::to_string(nx) +
                                    "," + std::to_string(ny));
    }
    if (static_cast<double>(nx) * static_cast<double>(ny) > static_cast<double>(kMaxGridPoints)) {
        throw SpecError("grid", "more than " + std::to_string(kMaxGridPoints) + " points");
    }
}

Point2 Grid::parameter(std::size_t index) const noexcept
{
    const auto n = static_cast<std::size_t>(nx_);
    const int i = static_cast<int>(index % n);
    const int j = static_cast<int>(index / n);
    const auto at = [](const Interval& r, int k, int count) {
        return k == count - 1 ? r.hi : r.lo + r.width() * k / (count - 1);
    };
    return {at(domain_.first, i, nx_), at(domain_.second, j, ny_)};
}

Point2 Grid::point(std::size_t index) const noexcept
{
    const Point2 st = parameter(index);
    const Point2 p = domain_.map(st.x, st.y);
    return {p.x + 0.0, p.y + 0.0}; // no -0 in reports and meshes
}

Point2 Grid::point(int i, int j) const noexcept
{
    return point(static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
                 static_cast<std::size_t>(i));
}

unsigned worker_count()
{
    if (const char* env = std::getenv("ISOKIT_THREADS")) {
        unsigned n = 0;
        const char* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, n);
        if (ec == std::errc{} && ptr == end && n > 0) {
            return n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) {
            body(k);
        }
        return;
    }

    std::mutex mutex;
    std::size_t failed_at = n;
    std::exception_ptr failure;
    const auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            try {
                body(k);
            } catch (...) {
                const std::lock_guard lock(mutex);
                if (k < failed_at) {
                    failed_at = k;
                    failure = std::current_exception();
                }
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        threads.emplace_back(run, begin, std::min(n, begin + chunk));
    }
    run(0, std::min(n, chunk));
    for (auto& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace isokit
