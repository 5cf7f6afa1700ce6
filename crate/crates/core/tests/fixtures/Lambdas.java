@SuppressWarnings("unchecked")
public final class Lambdas<T extends Comparable<? super T>> {
    private final Map<String, List<T>> cache = new HashMap<>();

    public List<T> sorted(Collection<T> in) {
        return in.stream()
                 .filter(Objects::nonNull)
                 .sorted((a, b) -> { return a.compareTo(b); })
                 .collect(Collectors.toList());
    }

    void handle(Event ev) {
        switch (ev.kind()) {
            case START -> logger.info("start {}", ev);
            case STOP -> {
                logger.info("stop");
            }
            default -> throw new IllegalArgumentException(ev.toString());
        }
        int[] arr = new int[] { 1, 2, 3 };
        Runnable r = () -> LOGGER.fatal("never");
        do { i++; } while (i < 10 && !done);
        assert i >= 10 : "loop ended early";
    }
}
