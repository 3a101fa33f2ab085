#include "blocksight/robosim/mission_runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "blocksight/common/rng.hpp"
#include "blocksight/robosim/bus.hpp"
#include "blocksight/robosim/world.hpp"

namespace blocksight::robosim {

namespace {

constexpr double kMaxLinearMmps = 2000.0;
constexpr double kMaxAngularMradps = 3000.0;

std::int64_t mm(double meters) { return std::llround(meters * 1000.0); }

// Controller-facing mailboxes plus command publication. Reads never block;
// a tick that runs late simply consumes stale data.
class Bridge : public vm::PortHandler {
public:
    Bridge(Bus& bus) : bus_(&bus) {}

    std::int64_t read(int port) override {
        switch (port) {
            case ports::kMissionDone: return goal_[3];
            case ports::kGoalX: return goal_[0];
            case ports::kGoalY: return goal_[1];
            case ports::kGoalSeq: return goal_[2];
            case ports::kOdomX: return odom_[0];
            case ports::kOdomY: return odom_[1];
            case ports::kHeadingX: return odom_[2];
            case ports::kHeadingY: return odom_[3];
            default: return 0;
        }
    }

    void write(int port, std::int64_t value) override {
        switch (port) {
            case ports::kCmdLinear:
                pending_linear_ = value;
                break;
            case ports::kCmdAngular:
                bus_->publish("controller", topics::kCmdVel, {pending_linear_, value});
                break;
            case ports::kGoalNext:
                bus_->publish("controller", topics::kGoalNext, {value});
                break;
            default:
                break;  // telemetry sink
        }
    }

    void on_goal(const BusMessage& msg) { goal_ = msg.payload; }
    void on_odom(const BusMessage& msg) { odom_ = msg.payload; }

private:
    Bus* bus_;
    std::int64_t pending_linear_ = 0;
    std::vector<std::int64_t> goal_ = {0, 0, 0, 0};  // x, y, seq, done
    std::vector<std::int64_t> odom_ = {0, 0, 0, 0};  // x, y, hx, hy
};

// Kinematics, odometry publication, and trajectory recording.
class World {
public:
    World(Bus& bus, Scheduler& sched, Pose start, double noise_sigma, std::uint64_t seed)
        : bus_(&bus), sched_(&sched), pose_(start), noise_sigma_(noise_sigma), rng_(seed) {}

    void on_cmd(const BusMessage& msg) {
        integrate_to(sched_->now());
        double v = static_cast<double>(msg.payload[0]);
        double w = static_cast<double>(msg.payload[1]);
        v = std::clamp(v, -kMaxLinearMmps, kMaxLinearMmps);
        w = std::clamp(w, -kMaxAngularMradps, kMaxAngularMradps);
        v_mps_ = v / 1000.0;
        w_radps_ = w / 1000.0;
    }

    void tick(Trajectory& trajectory) {
        const SimNs now = sched_->now();
        integrate_to(now);
        trajectory.samples.push_back({ns_to_seconds(now), pose_.x, pose_.y});
        const double nx = pose_.x + noise_sigma_ * gaussian(rng_);
        const double ny = pose_.y + noise_sigma_ * gaussian(rng_);
        bus_->publish("world", topics::kOdom,
                      {mm(nx), mm(ny), std::llround(std::cos(pose_.theta) * 1000.0),
                       std::llround(std::sin(pose_.theta) * 1000.0)});
    }

private:
    void integrate_to(SimNs t) {
        if (t <= integrated_to_) return;
        const double dt = ns_to_seconds(t - integrated_to_);
        pose_ = integrate_unicycle(pose_, v_mps_, w_radps_, dt);
        integrated_to_ = t;
    }

    Bus* bus_;
    Scheduler* sched_;
    Pose pose_;
    double noise_sigma_;
    Rng rng_;
    double v_mps_ = 0.0;
    double w_radps_ = 0.0;
    SimNs integrated_to_ = 0;
};

// Publishes the current waypoint and advances on /goal_next.
class GoalManager {
public:
    GoalManager(Bus& bus, Scheduler& sched, const Mission& mission)
        : bus_(&bus), sched_(&sched) {
        for (const auto& [x, y] : mission.waypoints) goals_.emplace_back(mm(x), mm(y));
    }

    void publish() {
        const auto& [x, y] = goals_[std::min(index_, goals_.size() - 1)];
        bus_->publish("goals", topics::kGoal,
                      {x, y, static_cast<std::int64_t>(index_) + 1, done_ ? 1 : 0});
    }

    void on_next(const BusMessage&) {
        if (done_) return;
        ++index_;
        if (index_ >= goals_.size()) {
            index_ = goals_.size() - 1;
            done_ = true;
            completion_ns_ = sched_->now();
        }
        publish();
    }

    std::optional<SimNs> completion_ns() const { return completion_ns_; }

private:
    Bus* bus_;
    Scheduler* sched_;
    std::vector<std::pair<std::int64_t, std::int64_t>> goals_;
    std::size_t index_ = 0;
    bool done_ = false;
    std::optional<SimNs> completion_ns_;
};

}  // namespace

MissionResult run_mission(const vm::Program& program, const Mission& mission,
                          const MissionRunConfig& config) {
    check_mission(mission);
    if (config.delay) check_delay_config(*config.delay);

    // Sleep-insertion delays rewrite the program before it runs.
    vm::Program modified;
    const vm::Program* effective = &program;
    if (config.delay) {
        if (const auto* s = std::get_if<SleepInsertionDelay>(&*config.delay)) {
            modified = insert_sleeps(program, s->weight, s->delay_ns, s->seed);
            effective = &modified;
        }
    }

    Scheduler sched;
    Bus bus(sched);
    bus.declare_topic(topics::kGoal, "goal");
    bus.declare_topic(topics::kOdom, "pose2d");
    bus.declare_topic(topics::kCmdVel, "twist2d");
    bus.declare_topic(topics::kGoalNext, "signal");
    bus.add_publisher("goals", topics::kGoal);
    bus.add_publisher("world", topics::kOdom);
    bus.add_publisher("controller", topics::kCmdVel);
    bus.add_publisher("controller", topics::kGoalNext);

    MissionResult result;
    Bridge bridge(bus);
    const Pose start{mission.waypoints.front().first, mission.waypoints.front().second, 0.0};
    World world(bus, sched, start, config.noise_sigma_m, config.seed);
    GoalManager goals(bus, sched, mission);

    bus.subscribe("controller", topics::kGoal, [&](const BusMessage& m) { bridge.on_goal(m); });
    bus.subscribe("controller", topics::kOdom, [&](const BusMessage& m) { bridge.on_odom(m); });
    bus.subscribe("world", topics::kCmdVel, [&](const BusMessage& m) { world.on_cmd(m); });
    bus.subscribe("goals", topics::kGoalNext, [&](const BusMessage& m) { goals.on_next(m); });

    if (config.delay) {
        if (const auto* t = std::get_if<TopicInterceptDelay>(&*config.delay))
            bus.intercept(t->topic, t->delay_ns);
    }
    result.topology = bus.topology();

    vm::Machine machine(*effective);
    std::unique_ptr<instrument::Collector> collector;
    if (config.mode != instrument::Mode::None)
        collector = std::make_unique<instrument::Collector>(*effective, config.mode,
                                                            config.interval_size);
    instrument::Collector* hooks = collector.get();

    // Recursive resume event; every Sleep schedules the next one.
    std::function<void()> resume_vm = [&]() {
        machine.sync_clock(sched.now());
        if (machine.resume(bridge, hooks, config.limits) == vm::Yield::Slept)
            sched.schedule(machine.state().clock_ns, resume_vm);
    };

    // Periodic odometry; initial goal and odometry go out before the
    // controller's first instruction.
    std::function<void()> odom_tick = [&]() {
        world.tick(result.trajectory);
        sched.schedule(sched.now() + config.control_period_ns, odom_tick);
    };

    const auto wall0 = std::chrono::steady_clock::now();
    world.tick(result.trajectory);
    sched.schedule(sched.now() + config.control_period_ns, odom_tick);
    goals.publish();
    sched.schedule(0, resume_vm);

    while (!machine.finished() && !sched.empty() && sched.next_time() <= config.limits.max_sim_ns)
        sched.run_next();
    machine.abort_timed_out(hooks);
    const auto wall1 = std::chrono::steady_clock::now();

    result.exit = machine.exit_kind();
    result.final_state = machine.state();
    result.trajectory.completion_s =
        goals.completion_ns() ? std::optional<double>(ns_to_seconds(*goals.completion_ns()))
                              : std::nullopt;
    mark_reached(result.trajectory, mission);
    if (collector) {
        result.stream = collector->stream();
        result.meter.hook_invocations = collector->hook_invocations();
    }
    result.meter.wall_seconds = std::chrono::duration<double>(wall1 - wall0).count();
    return result;
}

double crash_rate(const std::vector<RunOutcome>& runs, const Mission& mission) {
    if (runs.empty()) throw std::invalid_argument("crash_rate needs at least one run");
    std::size_t failures = 0;
    for (const auto& run : runs) {
        if (run.exit != vm::ExitKind::Halted) {
            ++failures;
            continue;
        }
        TrajectoryMetrics m = compute_metrics(run.trajectory, mission);
        if (m.min_dist.back() > mission.tolerance_m) ++failures;
    }
    return static_cast<double>(failures) / static_cast<double>(runs.size());
}

}  // namespace blocksight::robosim
