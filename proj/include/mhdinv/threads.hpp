// Minimal deterministic worker pool. Only pointwise (embarrassingly parallel)
// loops run on it, so results are bit-identical for every thread count; all
// reductions elsewhere stay serial with a fixed traversal order.
// MHD_INVARIANTS_THREADS caps the pool size.
#pragma once

#include <condition_variable>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mhdinv {

class ThreadPool {
  public:
    static ThreadPool& instance() {
        static ThreadPool pool;
        return pool;
    }

    int thread_count() const { return nthreads_; }

    // Runs fn(begin, end) over [0, n) split into contiguous blocks.
    void run_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
        if (nthreads_ <= 1 || n < kMinParallel) {
            fn(0, n);
            return;
        }
        std::size_t nblk = static_cast<std::size_t>(nthreads_);
        std::size_t chunk = (n + nblk - 1) / nblk;
        {
            std::unique_lock<std::mutex> lk(mu_);
            job_ = &fn;
            job_n_ = n;
            job_chunk_ = chunk;
            next_block_ = 0;
            pending_ = 0;
            for (std::size_t b = 0; b * chunk < n; ++b) ++pending_;
            ++generation_;
        }
        cv_work_.notify_all();
        work_one();  // the calling thread participates
        std::unique_lock<std::mutex> lk(mu_);
        cv_done_.wait(lk, [this] { return pending_ == 0; });
        job_ = nullptr;
    }

  private:
    static constexpr std::size_t kMinParallel = 16384;

    ThreadPool() {
        nthreads_ = static_cast<int>(std::thread::hardware_concurrency());
        if (nthreads_ <= 0) nthreads_ = 1;
        if (nthreads_ > 8) nthreads_ = 8;
        if (const char* env = std::getenv("MHD_INVARIANTS_THREADS")) {
            int cap = std::atoi(env);
            if (cap >= 1 && cap < nthreads_) nthreads_ = cap;
            if (cap >= 1 && nthreads_ < 1) nthreads_ = 1;
        }
        for (int t = 1; t < nthreads_; ++t)
            workers_.emplace_back([this] { worker_loop(); });
    }

    ~ThreadPool() {
        {
            std::unique_lock<std::mutex> lk(mu_);
            stop_ = true;
        }
        cv_work_.notify_all();
        for (auto& w : workers_) w.join();
    }

    void worker_loop() {
        std::size_t seen = 0;
        while (true) {
            {
                std::unique_lock<std::mutex> lk(mu_);
                cv_work_.wait(lk, [&] { return stop_ || generation_ != seen; });
                if (stop_) return;
                seen = generation_;
            }
            work_one();
        }
    }

    void work_one() {
        while (true) {
            std::size_t b;
            const std::function<void(std::size_t, std::size_t)>* job;
            std::size_t n, chunk;
            {
                std::unique_lock<std::mutex> lk(mu_);
                if (!job_ || next_block_ * job_chunk_ >= job_n_) return;
                b = next_block_++;
                job = job_;
                n = job_n_;
                chunk = job_chunk_;
            }
            std::size_t lo = b * chunk;
            std::size_t hi = std::min(n, lo + chunk);
            (*job)(lo, hi);
            {
                std::unique_lock<std::mutex> lk(mu_);
                if (--pending_ == 0) cv_done_.notify_all();
            }
        }
    }

    int nthreads_ = 1;
    std::vector<std::thread> workers_;
    std::mutex mu_;
    std::condition_variable cv_work_, cv_done_;
    const std::function<void(std::size_t, std::size_t)>* job_ = nullptr;
    std::size_t job_n_ = 0, job_chunk_ = 0, next_block_ = 0, pending_ = 0, generation_ = 0;
    bool stop_ = false;
};

// Pointwise parallel loop over [0, n). fn must touch only element i.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    ThreadPool::instance().run_blocks(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
}

}  // namespace mhdinv
