#ifndef BLOCKSIGHT_ROBOSIM_BUS_HPP
#define BLOCKSIGHT_ROBOSIM_BUS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "blocksight/common/sim_time.hpp"

namespace blocksight::robosim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single-threaded discrete-event clock. Ties are broken by scheduling order,
// so a given setup replays identically.
class Scheduler {
public:
    SimNs now() const { return now_; }
    bool empty() const { return queue_.empty(); }
    SimNs next_time() const { return queue_.top().time; }

    void schedule(SimNs time, std::function<void()> fn);

    // Pops and runs the earliest event; advances the clock to it.
    void run_next();

private:
    struct Event {
        SimNs time;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    SimNs now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

struct BusMessage {
    std::string topic;
    SimNs publish_ns = 0;
    SimNs deliver_ns = 0;
    std::vector<std::int64_t> payload;
};

// Topic-based publish-subscribe over the event scheduler. Per-topic delivery
// preserves publish order. intercept() implements delay injection by topic
// renaming: the original publishers are rebound to <topic>_intercepted and a
// delay node republishes onto the original name.
class Bus {
public:
    explicit Bus(Scheduler& scheduler) : scheduler_(&scheduler) {}

    void declare_topic(const std::string& topic, const std::string& type_tag);
    void add_publisher(const std::string& node, const std::string& topic);
    void subscribe(const std::string& node, const std::string& topic,
                   std::function<void(const BusMessage&)> callback);

    // Publishes from a node on its logical topic; interception may reroute.
    void publish(const std::string& node, const std::string& topic,
                 std::vector<std::int64_t> payload);

    // Must be called before any traffic. Unknown topic throws ConfigError.
    void intercept(const std::string& topic, SimNs delay_ns);

    // One line per publisher binding: "publisher -> topic -> [subs]".
    std::string topology() const;

private:
    struct TopicInfo {
        std::string type_tag;
        std::vector<std::string> publishers;
        std::vector<std::pair<std::string, std::function<void(const BusMessage&)>>> subscribers;
    };

    void deliver(const std::string& topic, SimNs publish_ns, SimNs deliver_ns,
                 std::vector<std::int64_t> payload);

    Scheduler* scheduler_;
    std::map<std::string, TopicInfo> topics_;
    std::map<std::pair<std::string, std::string>, std::string> bindings_;  // (node, logical) -> actual
};

}  // namespace blocksight::robosim

#endif
