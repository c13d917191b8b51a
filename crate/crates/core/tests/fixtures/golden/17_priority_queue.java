import java.util.*;

public class Main {
    public static void main(String[] args) {
        PriorityQueue<Long> pq = new PriorityQueue<>();           // v1 s1 (PriorityQueue)
        for (long i = 10; i > 0; i--) pq.add(i);                  // loop1 v2 s2, s3
        long cost = 0;                                            // v3 s4
        while (pq.size() > 1) {                                   // loop2 s5
            long a = pq.poll(), b = pq.poll();                    // v4 v5 s6
            cost += a + b;                                        // s7
            pq.add(a + b);                                        // s8
        }
        System.out.println(cost);                                 // s9
    }
}
