#pragma once

// Explicit quarter-subdivided ball of a free-group Cayley tree, with BFS distances.
// Used as an independent check of the tree search and the displacement formula.

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "jointdisp/tree/free_tree.hpp"

namespace oracle {

using jd::tree::FreeWord;

class SubdividedBall {
public:
    SubdividedBall(int rank, int radius) : rank_(rank) {
        std::queue<FreeWord> q;
        add_vertex(FreeWord{});
        q.push(FreeWord{});
        while (!q.empty()) {
            FreeWord v = q.front();
            q.pop();
            if (v.length() == radius) continue;
            for (int k = -rank; k <= rank; ++k) {
                if (k == 0) continue;
                if (!v.empty() && v.back() == -k) continue;
                FreeWord w = v * FreeWord::generator(k);
                int a = id_of(v), b = add_vertex(w);
                // three interior nodes per edge
                int prev = a;
                for (int qq = 1; qq <= 3; ++qq) {
                    int n = new_node();
                    interior_[{v.str() + ">" + w.str(), qq}] = n;
                    link(prev, n);
                    prev = n;
                }
                link(prev, b);
                q.push(w);
            }
        }
    }

    int size() const { return static_cast<int>(adj_.size()); }

    // node id of a quarter point, or -1 if outside the ball
    int node(const jd::tree::TreePoint& p) const {
        if (p.is_vertex()) {
            auto it = vertex_.find(p.a.str());
            return it == vertex_.end() ? -1 : it->second;
        }
        auto it = interior_.find({p.a.str() + ">" + p.b.str(), p.quarter});
        if (it != interior_.end()) return it->second;
        it = interior_.find({p.b.str() + ">" + p.a.str(), 4 - p.quarter});
        return it == interior_.end() ? -1 : it->second;
    }

    std::vector<int> bfs(int src) const {
        std::vector<int> d(adj_.size(), -1);
        std::queue<int> q;
        d[src] = 0;
        q.push(src);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj_[u])
                if (d[w] < 0) {
                    d[w] = d[u] + 1;
                    q.push(w);
                }
        }
        return d;
    }

    // All quarter points whose edge lies within the given radius.
    std::vector<jd::tree::TreePoint> points(int radius) const {
        std::vector<jd::tree::TreePoint> out;
        for (const auto& [key, id] : vertex_) {
            FreeWord v = FreeWord::parse(key == "1" ? "" : key);
            if (v.length() <= radius) out.push_back(jd::tree::TreePoint::vertex(v));
        }
        for (const auto& [key, id] : interior_) {
            auto sep = key.first.find('>');
            FreeWord a = FreeWord::parse(key.first.substr(0, sep) == "1" ? "" : key.first.substr(0, sep));
            FreeWord b = FreeWord::parse(key.first.substr(sep + 1));
            if (b.length() <= radius) out.push_back({a, b, key.second});
        }
        return out;
    }

private:
    int new_node() {
        adj_.emplace_back();
        return static_cast<int>(adj_.size()) - 1;
    }
    int add_vertex(const FreeWord& w) {
        auto it = vertex_.find(w.str());
        if (it != vertex_.end()) return it->second;
        int n = new_node();
        vertex_[w.str()] = n;
        return n;
    }
    int id_of(const FreeWord& w) const { return vertex_.at(w.str()); }
    void link(int a, int b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }

    int rank_;
    std::vector<std::vector<int>> adj_;
    std::map<std::string, int> vertex_;
    std::map<std::pair<std::string, int>, int> interior_;
};

// min over quarter points within `radius` of max_s d(p, sp), by explicit BFS; in units of edges.
inline double enumerated_L(const std::vector<FreeWord>& set, int rank, int radius) {
    int maxlen = 0;
    for (const auto& s : set) maxlen = std::max(maxlen, s.length());
    SubdividedBall ball(rank, radius + maxlen + 1);
    jd::tree::FreeTreeGeometry geo(rank);
    int best = -1;
    for (const auto& p : ball.points(radius)) {
        auto d = ball.bfs(ball.node(p));
        int f = 0;
        for (const auto& s : set) f = std::max(f, d.at(ball.node(geo.apply(s, p))));
        if (best < 0 || f < best) best = f;
    }
    return best / 4.0;
}

inline FreeWord random_word(std::mt19937_64& rng, int rank, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(1, rank);
    std::bernoulli_distribution sign(0.5);
    std::vector<int> ls;
    int n = len(rng);
    while (static_cast<int>(ls.size()) < n) {
        int l = gen(rng) * (sign(rng) ? 1 : -1);
        if (!ls.empty() && ls.back() == -l) continue;
        ls.push_back(l);
    }
    return FreeWord(ls);
}

}  // namespace oracle
